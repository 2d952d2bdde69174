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

#include "ec3lab/hamiltonian.h"

#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ec3lab/errors.h"

namespace ec3lab {

namespace {

void require_dense_cap(int n_bits) {
    if (n_bits > kDenseMatrixQubitCap) {
        throw CapExceeded(
            "dense matrix refused: " + std::to_string(n_bits) + " qubits exceeds the cap of " +
            std::to_string(kDenseMatrixQubitCap));
    }
}

void require_diagonal_cap(int n_bits) {
    if (n_bits > kDiagonalQubitCap) {
        throw CapExceeded(
            "diagonal operator refused: " + std::to_string(n_bits) + " qubits exceeds the cap of " +
            std::to_string(kDiagonalQubitCap));
    }
}

uint64_t z_mask(const std::string &letters) {
    const int n = static_cast<int>(letters.size());
    uint64_t m = 0;
    for (int i = 0; i < n; i++) {
        if (letters[i] == 'Z') {
            m |= uint64_t{1} << (n - 1 - i);
        }
    }
    return m;
}

template <typename M>
GroundSpace ground_space_impl(const M &h, double degeneracy_tol) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw ValidationError("ground_space requires a non-empty square matrix");
    }
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw ValidationError("ground_space requires a Hermitian matrix (deviation above 1e-10)");
    }
    Eigen::SelfAdjointEigenSolver<M> solver(h);
    if (solver.info() != Eigen::Success) {
        throw NumericError(
            "Hermitian eigensolver did not converge on a " + std::to_string(h.rows()) + "x" +
            std::to_string(h.rows()) + " matrix");
    }
    const auto &vals = solver.eigenvalues();
    Eigen::Index count = 1;
    while (count < vals.size() && vals[count] - vals[0] <= degeneracy_tol) {
        count++;
    }
    Matrix basis = solver.eigenvectors().leftCols(count).template cast<cplx>();
    if (count > 1) {
        Eigen::HouseholderQR<Matrix> qr(basis);
        basis = qr.householderQ() * Matrix::Identity(basis.rows(), count);
    }
    return GroundSpace{vals[0], std::move(basis)};
}

}  // namespace

std::string PauliString::label() const {
    std::string out;
    for (size_t i = 0; i < letters.size(); i++) {
        if (letters[i] != 'I') {
            out += letters[i];
            out += std::to_string(i + 1);
        }
    }
    return out.empty() ? "I" : out;
}

PauliSum::PauliSum(int n_bits) : n_bits_(n_bits) {
    if (n_bits < 1) {
        throw ValidationError("PauliSum needs at least one qubit");
    }
}

void PauliSum::add(const std::string &letters, double coefficient) {
    if (static_cast<int>(letters.size()) != n_bits_) {
        throw ValidationError("Pauli string '" + letters + "' has the wrong length for " + std::to_string(n_bits_) + " qubits");
    }
    if (letters.find_first_not_of("IXYZ") != std::string::npos) {
        throw ValidationError("Pauli string '" + letters + "' has a letter outside IXYZ");
    }
    if (!std::isfinite(coefficient)) {
        throw ValidationError("Pauli coefficient must be finite");
    }
    terms_[letters] += coefficient;
}

std::vector<PauliString> PauliSum::terms() const {
    std::vector<PauliString> out;
    out.reserve(terms_.size());
    for (const auto &[letters, c] : terms_) {
        out.push_back({letters, c});
    }
    return out;
}

double PauliSum::coefficient(const std::string &letters) const {
    auto it = terms_.find(letters);
    return it == terms_.end() ? 0.0 : it->second;
}

double PauliSum::coefficient_of(const std::string &label) const {
    return coefficient(letters_from_label(label, n_bits_));
}

Matrix PauliSum::to_matrix() const {
    require_dense_cap(n_bits_);
    const uint64_t dim = uint64_t{1} << n_bits_;
    Matrix m = Matrix::Zero(dim, dim);
    for (const auto &[letters, c] : terms_) {
        uint64_t flip = 0;
        for (int i = 0; i < n_bits_; i++) {
            if (letters[i] == 'X' || letters[i] == 'Y') {
                flip |= uint64_t{1} << (n_bits_ - 1 - i);
            }
        }
        for (uint64_t x = 0; x < dim; x++) {
            cplx amp = c;
            for (int i = 0; i < n_bits_; i++) {
                int bit = (x >> (n_bits_ - 1 - i)) & 1;
                switch (letters[i]) {
                    case 'Z':
                        if (bit) amp = -amp;
                        break;
                    case 'Y':
                        amp *= bit ? cplx(0, -1) : cplx(0, 1);
                        break;
                    default:
                        break;
                }
            }
            m(x ^ flip, x) += amp;
        }
    }
    return m;
}

std::string letters_from_label(const std::string &label, int n_bits) {
    std::string letters(n_bits, 'I');
    if (label == "I") {
        return letters;
    }
    size_t pos = 0;
    while (pos < label.size()) {
        char p = label[pos++];
        size_t end = pos;
        while (end < label.size() && std::isdigit(static_cast<unsigned char>(label[end]))) {
            end++;
        }
        if (end == pos || std::string("XYZ").find(p) == std::string::npos) {
            throw ParseError("bad Pauli label '" + label + "'");
        }
        int q = std::stoi(label.substr(pos, end - pos));
        if (q < 1 || q > n_bits) {
            throw ParseError("Pauli label '" + label + "' addresses a qubit outside [1, n]");
        }
        letters[q - 1] = p;
        pos = end;
    }
    return letters;
}

int DiagonalOperator::n_bits() const {
    return std::countr_zero(entries.size());
}

PauliSum build_hb(const Ec3Instance &inst) {
    const int n = inst.n_bits();
    PauliSum hb(n);
    auto w = inst.bit_multiplicities();
    double identity = 0;
    for (int i = 0; i < n; i++) {
        identity += 0.5 * w[i];
        if (w[i] != 0) {
            std::string letters(n, 'I');
            letters[i] = 'X';
            hb.add(letters, -0.5 * w[i]);
        }
    }
    hb.add(std::string(n, 'I'), identity);
    return hb;
}

DiagonalOperator build_hp_diagonal(const Ec3Instance &inst) {
    require_diagonal_cap(inst.n_bits());
    const uint64_t dim = uint64_t{1} << inst.n_bits();
    DiagonalOperator d;
    d.entries.resize(dim);
    for (uint64_t x = 0; x < dim; x++) {
        d.entries[x] = violated_count(inst, x);
    }
    return d;
}

PauliSum diagonal_to_pauli(const DiagonalOperator &diag) {
    const int n = diag.n_bits();
    require_diagonal_cap(n);
    if (diag.entries.empty() || (size_t{1} << n) != diag.entries.size()) {
        throw ValidationError("diagonal length must be a power of two");
    }
    // In-place fast Walsh-Hadamard transform; dyadic inputs stay exact.
    std::vector<double> c = diag.entries;
    for (size_t h = 1; h < c.size(); h <<= 1) {
        for (size_t i = 0; i < c.size(); i += h << 1) {
            for (size_t j = i; j < i + h; j++) {
                double a = c[j];
                double b = c[j + h];
                c[j] = a + b;
                c[j + h] = a - b;
            }
        }
    }
    const double norm = std::ldexp(1.0, -n);
    PauliSum out(n);
    for (size_t mask = 0; mask < c.size(); mask++) {
        double coeff = c[mask] * norm;
        if (coeff != 0.0) {
            std::string letters(n, 'I');
            for (int i = 0; i < n; i++) {
                if ((mask >> (n - 1 - i)) & 1) {
                    letters[i] = 'Z';
                }
            }
            out.add(letters, coeff);
        }
    }
    return out;
}

PauliSum hp_to_pauli(const Ec3Instance &inst) {
    const int n = inst.n_bits();
    PauliSum sum = diagonal_to_pauli(build_hp_diagonal(inst));
    for (const auto &c : inst.clauses()) {
        for (int subset = 0; subset < 8; subset++) {
            std::string letters(n, 'I');
            for (int k = 0; k < 3; k++) {
                if ((subset >> k) & 1) {
                    letters[c.bits[k] - 1] = 'Z';
                }
            }
            sum.add(letters, 0.0);
        }
    }
    return sum;
}

DiagonalOperator pauli_to_diagonal(const PauliSum &sum) {
    const int n = sum.n_bits();
    require_diagonal_cap(n);
    DiagonalOperator d;
    d.entries.assign(size_t{1} << n, 0.0);
    for (const auto &term : sum.terms()) {
        if (term.letters.find_first_of("XY") != std::string::npos) {
            throw ValidationError("pauli_to_diagonal requires {I, Z} strings only");
        }
        uint64_t m = z_mask(term.letters);
        for (uint64_t x = 0; x < d.entries.size(); x++) {
            d.entries[x] += (std::popcount(m & x) & 1) ? -term.coefficient : term.coefficient;
        }
    }
    return d;
}

RealMatrix hb_matrix(const Ec3Instance &inst) {
    return build_hb(inst).to_matrix().real();
}

RealMatrix hp_matrix(const Ec3Instance &inst) {
    require_dense_cap(inst.n_bits());
    auto d = build_hp_diagonal(inst);
    return Eigen::Map<const Eigen::VectorXd>(d.entries.data(), d.entries.size()).asDiagonal();
}

RealMatrix h0_matrix(const Ec3Instance &inst, double s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw ValidationError("interpolation parameter s must lie in [0, 1]");
    }
    return (1.0 - s) * hb_matrix(inst) + s * hp_matrix(inst);
}

GroundSpace ground_space(const Matrix &h, double degeneracy_tol) {
    return ground_space_impl(h, degeneracy_tol);
}

GroundSpace ground_space(const RealMatrix &h, double degeneracy_tol) {
    return ground_space_impl(h, degeneracy_tol);
}

std::string format_dyadic(double value) {
    if (value == 0.0) {
        return "0";
    }
    for (int k = 0; k <= 20; k++) {
        double scaled = std::ldexp(value, k);
        if (std::abs(scaled) < 0x1p53 && scaled == std::floor(scaled)) {
            char buf[64];
            if (k == 0) {
                std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(scaled));
            } else {
                std::snprintf(buf, sizeof buf, "%lld/%llu", static_cast<long long>(scaled),
                              static_cast<unsigned long long>(uint64_t{1} << k));
            }
            return buf;
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string format_pauli_table(const PauliSum &sum) {
    std::ostringstream out;
    for (const auto &t : sum.terms()) {
        out << t.label() << " " << format_dyadic(t.coefficient) << "\n";
    }
    return out.str();
}

}  // namespace ec3lab
