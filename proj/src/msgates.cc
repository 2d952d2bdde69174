// Copyright 2026 The ec3lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ec3lab/msgates.h"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "ec3lab/errors.h"
#include "ec3lab/hamiltonian.h"

namespace ec3lab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kHalfPi = std::numbers::pi / 2;

void require_register_cap(int n_total) {
    if (n_total < 1 || n_total > kDenseMatrixQubitCap) {
        throw CapExceeded(
            "register of " + std::to_string(n_total) + " qubits is outside the dense verification range [1, " +
            std::to_string(kDenseMatrixQubitCap) + "]");
    }
}

Matrix single_qubit_on(const Matrix &op, int qubit, int n_total) {
    Matrix out = Matrix::Identity(1, 1);
    for (int q = 0; q < n_total; q++) {
        out = kron(out, q == qubit ? op : pauli_matrix::identity());
    }
    return out;
}

Matrix pauli_for(Axis axis) {
    switch (axis) {
        case Axis::x:
            return pauli_matrix::x();
        case Axis::y:
            return pauli_matrix::y();
        default:
            return pauli_matrix::z();
    }
}

Matrix rotation(Axis axis, double angle) {
    return std::cos(angle / 2) * pauli_matrix::identity() - cplx(0, std::sin(angle / 2)) * pauli_for(axis);
}

/// Applies a 2^r x 2^r gate to the rows of m addressed by `qubits` (qubits[0] most significant).
template <typename M>
void apply_on(M &m, const Matrix &g, const std::vector<int> &qubits, int n_reg) {
    const size_t r = qubits.size();
    const uint64_t dim = uint64_t{1} << n_reg;
    const uint64_t sub = uint64_t{1} << r;
    std::vector<uint64_t> offsets(sub, 0);
    uint64_t qmask = 0;
    for (uint64_t a = 0; a < sub; a++) {
        for (size_t i = 0; i < r; i++) {
            if ((a >> (r - 1 - i)) & 1) {
                offsets[a] |= uint64_t{1} << (n_reg - 1 - qubits[i]);
            }
        }
    }
    for (int q : qubits) {
        qmask |= uint64_t{1} << (n_reg - 1 - q);
    }
    Vector in(sub);
    for (uint64_t base = 0; base < dim; base++) {
        if (base & qmask) {
            continue;
        }
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            for (uint64_t a = 0; a < sub; a++) {
                in[a] = m(base | offsets[a], c);
            }
            Vector out = g * in;
            for (uint64_t a = 0; a < sub; a++) {
                m(base | offsets[a], c) = out[a];
            }
        }
    }
}

template <typename M>
void apply_op(M &m, const GateOp &op, int n_reg) {
    std::visit(
        overloaded{
            [&](const gate::MolmerSorensen &g) {
                apply_on(m, u_ms(g.theta, g.phi, static_cast<int>(g.qubits.size())), g.qubits, n_reg);
            },
            [&](const gate::AncillaRotation &g) { apply_on(m, rotation(g.axis, g.angle), {0}, n_reg); },
            [&](const gate::LocalRotation &g) { apply_on(m, rotation(g.axis, g.angle), {g.qubit}, n_reg); },
            [&](const gate::GlobalPhase &g) { m *= std::polar(1.0, g.angle); },
        },
        op);
}

std::string f12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void check_support(const std::vector<int> &support, int n_system) {
    if (support.empty()) {
        throw ValidationError("Pauli-string support must not be empty");
    }
    for (size_t i = 0; i < support.size(); i++) {
        if (support[i] < 1 || support[i] > n_system) {
            throw ValidationError("support qubit " + std::to_string(support[i]) + " outside [1, n]");
        }
        for (size_t k = 0; k < i; k++) {
            if (support[k] == support[i]) {
                throw ValidationError("support lists qubit " + std::to_string(support[i]) + " twice");
            }
        }
    }
    require_register_cap(n_system + 1);
}

}  // namespace

char axis_name(Axis axis) {
    return axis == Axis::x ? 'x' : axis == Axis::y ? 'y' : 'z';
}

void GateSequence::append(const GateSequence &other) {
    if (other.n_system != n_system) {
        throw ValidationError("cannot append gate sequences on different registers");
    }
    ops.insert(ops.end(), other.ops.begin(), other.ops.end());
}

std::string GateSequence::listing() const {
    std::ostringstream out;
    for (const auto &op : ops) {
        std::visit(
            overloaded{
                [&](const gate::MolmerSorensen &g) {
                    out << "MS theta=" << f12(g.theta) << " phi=" << f12(g.phi) << " qubits=";
                    for (size_t i = 0; i < g.qubits.size(); i++) {
                        out << (i ? "," : "") << g.qubits[i];
                    }
                    out << "\n";
                },
                [&](const gate::AncillaRotation &g) {
                    out << "ANC axis=" << axis_name(g.axis) << " angle=" << f12(g.angle) << "\n";
                },
                [&](const gate::LocalRotation &g) {
                    out << "ROT q=" << g.qubit << " axis=" << axis_name(g.axis) << " angle=" << f12(g.angle) << "\n";
                },
                [&](const gate::GlobalPhase &g) { out << "PHASE angle=" << f12(g.angle) << "\n"; },
            },
            op);
    }
    return out.str();
}

Matrix GateSequence::unitary() const {
    const int n_reg = n_system + 1;
    require_register_cap(n_reg);
    Matrix u = Matrix::Identity(Eigen::Index{1} << n_reg, Eigen::Index{1} << n_reg);
    for (const auto &op : ops) {
        apply_op(u, op, n_reg);
    }
    return u;
}

void GateSequence::apply(StateVector &state) const {
    const int n_reg = n_system + 1;
    if (state.size() != (Eigen::Index{1} << n_reg)) {
        throw ValidationError("register state has the wrong dimension");
    }
    for (const auto &op : ops) {
        apply_op(state, op, n_reg);
    }
}

size_t GateSequence::ms_count() const {
    size_t count = 0;
    for (const auto &op : ops) {
        count += std::holds_alternative<gate::MolmerSorensen>(op);
    }
    return count;
}

Matrix u_ms(double theta, double phi, int n_total) {
    require_register_cap(n_total);
    const Eigen::Index dim = Eigen::Index{1} << n_total;
    Matrix s = Matrix::Zero(dim, dim);
    const Matrix axis = std::cos(phi) * pauli_matrix::x() + std::sin(phi) * pauli_matrix::y();
    for (int q = 0; q < n_total; q++) {
        s += single_qubit_on(axis, q, n_total);
    }
    Matrix s2 = s * s;
    return expm_hermitian(Matrix(0.5 * (s2 + s2.adjoint())), theta / 4);
}

gate::AncillaRotation ancilla_rule(double phi, int n) {
    if (n < 1) {
        throw ValidationError("ancilla rule needs n >= 1");
    }
    // exp(-i phi sigma) = R(2 phi); exp(+i phi sigma) = R(-2 phi).
    switch (n % 4) {
        case 1:
            return {Axis::y, 2 * phi};
        case 3:
            return {Axis::y, -2 * phi};
        case 0:
            return {Axis::z, -2 * phi};
        default:
            return {Axis::z, 2 * phi};
    }
}

Matrix u_anc(double phi, int n) {
    require_register_cap(n + 1);
    auto g = ancilla_rule(phi, n);
    return single_qubit_on(rotation(g.axis, g.angle), 0, n + 1);
}

MsIdentityDeviation verify_ms_identity(double phi, int n) {
    require_register_cap(n + 1);
    const Matrix r = u_ms(-kHalfPi, 0, n + 1) * u_anc(phi, n) * u_ms(kHalfPi, 0, n + 1);
    Matrix x_string = Matrix::Identity(1, 1);
    for (int q = 0; q < n; q++) {
        x_string = kron(x_string, pauli_matrix::x());
    }
    const Eigen::Index d = x_string.rows();
    const Matrix target = std::cos(phi) * Matrix::Identity(d, d) + cplx(0, std::sin(phi)) * x_string;
    MsIdentityDeviation dev{};
    dev.global = spectral_distance(r, kron(pauli_matrix::identity(), target));
    dev.subspace = spectral_distance(ancilla_zero_block(r, n), target);
    return dev;
}

GateSequence x_string_via_ms(double phi, const std::vector<int> &support, int n_system) {
    check_support(support, n_system);
    std::vector<int> addressed{0};
    addressed.insert(addressed.end(), support.begin(), support.end());
    GateSequence seq{n_system, {}};
    seq.ops.push_back(gate::MolmerSorensen{kHalfPi, 0.0, addressed});
    seq.ops.push_back(ancilla_rule(phi, static_cast<int>(support.size())));
    seq.ops.push_back(gate::MolmerSorensen{-kHalfPi, 0.0, addressed});
    return seq;
}

GateSequence z_string_via_ms(double phi, const std::vector<int> &support, int n_system) {
    check_support(support, n_system);
    GateSequence seq{n_system, {}};
    if (phi == 0.0) {
        return seq;
    }
    for (int q : support) {
        seq.ops.push_back(gate::LocalRotation{q, Axis::y, kHalfPi});
    }
    seq.append(x_string_via_ms(phi, support, n_system));
    for (int q : support) {
        seq.ops.push_back(gate::LocalRotation{q, Axis::y, -kHalfPi});
    }
    return seq;
}

GateSequence compile_slice(const Ec3Instance &inst, int64_t j, int64_t k, double tau_j) {
    if (k <= 0 || j < 0 || j > k) {
        throw ValidationError("slice index must satisfy 0 <= j <= k");
    }
    if (!std::isfinite(tau_j)) {
        throw ValidationError("slice duration must be finite");
    }
    const int n = inst.n_bits();
    require_register_cap(n + 1);
    const double s = static_cast<double>(j) / static_cast<double>(k);
    const double hp_time = s * tau_j;
    const double hb_time = (1.0 - s) * tau_j;
    GateSequence seq{n, {}};
    double phase = 0;

    // exp(-i t c Z_S) = exp(i phi Z_S) with phi = -t c; all Z-strings commute.
    for (const auto &term : hp_to_pauli(inst).terms()) {
        if (term.coefficient == 0.0 || hp_time == 0.0) {
            continue;
        }
        std::vector<int> support;
        for (int i = 0; i < n; i++) {
            if (term.letters[i] == 'Z') {
                support.push_back(i + 1);
            }
        }
        if (support.empty()) {
            phase -= hp_time * term.coefficient;
        } else {
            seq.append(z_string_via_ms(-hp_time * term.coefficient, support, n));
        }
    }
    // exp(-i t c X_q) = R_x(2 t c).
    for (const auto &term : build_hb(inst).terms()) {
        if (term.coefficient == 0.0 || hb_time == 0.0) {
            continue;
        }
        size_t q = term.letters.find('X');
        if (q == std::string::npos) {
            phase -= hb_time * term.coefficient;
        } else {
            seq.ops.push_back(gate::LocalRotation{static_cast<int>(q) + 1, Axis::x, 2 * hb_time * term.coefficient});
        }
    }
    if (phase != 0.0) {
        seq.ops.push_back(gate::GlobalPhase{phase});
    }
    return seq;
}

Matrix ancilla_zero_block(const Matrix &register_op, int n_system) {
    const Eigen::Index d = Eigen::Index{1} << n_system;
    if (register_op.rows() != 2 * d || register_op.cols() != 2 * d) {
        throw ValidationError("register operator has the wrong dimension");
    }
    return register_op.topLeftCorner(d, d);
}

}  // namespace ec3lab
