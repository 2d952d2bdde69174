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
#include <random>

#include <gtest/gtest.h>

#include "ec3lab/errors.h"
#include "ec3lab/evolve.h"
#include "ec3lab/hamiltonian.h"
#include "oracles.h"

using namespace ec3lab;

namespace {

const double kPi = 3.14159265358979323846;

// Pauli string on n qubits with `letter` on the listed positions (0 = most significant).
Matrix pauli_on(int n, const std::vector<int> &positions, char letter) {
    Matrix out = Matrix::Identity(1, 1);
    for (int q = 0; q < n; q++) {
        bool hit = std::find(positions.begin(), positions.end(), q) != positions.end();
        Matrix f = !hit ? pauli_matrix::identity() : letter == 'X' ? pauli_matrix::x() : pauli_matrix::z();
        out = kron(out, f);
    }
    return out;
}

Matrix exp_i_phi(double phi, const Matrix &p) {
    return std::cos(phi) * Matrix::Identity(p.rows(), p.cols()) + cplx(0, std::sin(phi)) * p;
}

}  // namespace

TEST(msgates, u_ms_two_qubit_closed_form) {
    // (X0 + X1)^2 = 2 + 2 XX, so the pi/2 gate is e^{-i pi/4} exp(-i pi/4 XX).
    Matrix xx = kron(pauli_matrix::x(), pauli_matrix::x());
    Matrix expected = std::polar(1.0, -kPi / 4) *
                      (std::cos(kPi / 4) * Matrix::Identity(4, 4) - cplx(0, std::sin(kPi / 4)) * xx);
    EXPECT_LT((u_ms(kPi / 2, 0, 2) - expected).norm(), 1e-14);
}

TEST(msgates, u_ms_matches_taylor_oracle) {
    for (int n : {1, 2, 3}) {
        Matrix sx = Matrix::Zero(1 << n, 1 << n);
        Matrix sy = sx;
        for (int q = 0; q < n; q++) {
            Matrix ax = Matrix::Identity(1, 1), ay = ax;
            for (int r = 0; r < n; r++) {
                ax = kron(ax, r == q ? Matrix(pauli_matrix::x()) : Matrix(pauli_matrix::identity()));
                ay = kron(ay, r == q ? Matrix(pauli_matrix::y()) : Matrix(pauli_matrix::identity()));
            }
            sx += ax;
            sy += ay;
        }
        double theta = 0.9, phi = 0.4;
        Matrix gen = std::cos(phi) * sx + std::sin(phi) * sy;
        Matrix expected = oracle::taylor_expm(gen * gen, theta / 4);
        EXPECT_LT((u_ms(theta, phi, n) - expected).norm(), 1e-12) << n;
    }
}

TEST(msgates, u_ms_inverse_and_unitarity) {
    for (int n : {1, 2, 4}) {
        Matrix u = u_ms(1.1, 0.3, n);
        EXPECT_LT(unitarity_defect(u), 1e-13);
        EXPECT_LT((u * u_ms(-1.1, 0.3, n) - Matrix::Identity(u.rows(), u.cols())).norm(), 1e-13);
    }
}

TEST(msgates, ancilla_rule_by_residue) {
    const double phi = 0.37;
    struct Case {
        int n;
        Axis axis;
        double angle;
    };
    for (auto c : {Case{1, Axis::y, 2 * phi}, Case{2, Axis::z, 2 * phi}, Case{3, Axis::y, -2 * phi},
                   Case{4, Axis::z, -2 * phi}, Case{5, Axis::y, 2 * phi}, Case{8, Axis::z, -2 * phi}}) {
        auto rot = ancilla_rule(phi, c.n);
        EXPECT_EQ(rot.axis, c.axis) << c.n;
        EXPECT_DOUBLE_EQ(rot.angle, c.angle) << c.n;
        Matrix p = c.axis == Axis::y ? Matrix(pauli_matrix::y()) : Matrix(pauli_matrix::z());
        Matrix expected = kron(exp_i_phi(-c.angle / 2, p), Matrix::Identity(1 << c.n, 1 << c.n));
        EXPECT_LT((u_anc(phi, c.n) - expected).norm(), 1e-15) << c.n;
    }
    EXPECT_THROW(u_anc(0.1, 0), ValidationError);
}

TEST(msgates, identity_holds_on_ancilla_zero_block) {
    for (int n = 1; n <= 5; n++) {
        for (double phi : {0.0, 0.3, kPi / 2, 1.7, -2.4}) {
            auto dev = verify_ms_identity(phi, n);
            EXPECT_LE(dev.subspace, 1e-10) << n << " " << phi;
        }
    }
    // The full register operator carries Z on the ancilla, so it differs globally.
    EXPECT_GT(verify_ms_identity(0.3, 2).global, 0.1);
}

TEST(msgates, x_string_is_controlled_by_ancilla_z) {
    const int n = 3;
    const double phi = 0.8;
    Matrix u = x_string_via_ms(phi, {1, 3}, n).unitary();
    Matrix z0x = pauli_on(n + 1, {0}, 'Z') * pauli_on(n + 1, {1, 3}, 'X');
    EXPECT_LT(spectral_distance(u, exp_i_phi(phi, z0x)), 1e-12);
}

TEST(msgates, z_strings) {
    const int n = 4;
    for (auto support : std::vector<std::vector<int>>{{2}, {1, 2, 3}, {1, 2, 3, 4}, {4, 1}}) {
        const double phi = -0.61;
        Matrix block = ancilla_zero_block(z_string_via_ms(phi, support, n).unitary(), n);
        std::vector<int> pos;
        for (int q : support) {
            pos.push_back(q - 1);
        }
        EXPECT_LT(spectral_distance(block, exp_i_phi(phi, pauli_on(n, pos, 'Z'))), 1e-12);
    }
    EXPECT_TRUE(z_string_via_ms(0.0, {1}, n).ops.empty());
    EXPECT_THROW(z_string_via_ms(0.1, {0}, n), ValidationError);
    EXPECT_THROW(z_string_via_ms(0.1, {5}, n), ValidationError);
    EXPECT_THROW(z_string_via_ms(0.1, {2, 2}, n), ValidationError);
}

TEST(msgates, ancilla_returns_to_zero) {
    const int n = 3;
    auto seq = z_string_via_ms(1.23, {1, 2, 3}, n);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    StateVector sys(1 << n);
    for (auto &a : sys) {
        a = cplx(g(rng), g(rng));
    }
    sys.normalize();
    StateVector reg = StateVector::Zero(2 << n);
    reg.head(1 << n) = sys;
    seq.apply(reg);
    EXPECT_LT(reg.tail(1 << n).norm(), 1e-12);
    EXPECT_NEAR(reg.norm(), 1.0, 1e-12);
}

TEST(msgates, apply_matches_unitary) {
    auto seq = compile_slice(paper_instance(), 3, 7, 0.2);
    Matrix u = seq.unitary();
    StateVector v = StateVector::Zero(32);
    v[0] = 1;
    v[9] = cplx(0, 1);
    v.normalize();
    StateVector w = v;
    seq.apply(w);
    EXPECT_LT((w - u * v).norm(), 1e-12);
    EXPECT_LT(unitarity_defect(u), 1e-12);
}

TEST(msgates, rotation_convention) {
    GateSequence seq{1, {gate::LocalRotation{1, Axis::y, kPi / 2}}};
    // R_y(pi/2) maps |0> to (|0> + |1>)/sqrt2 with a real positive amplitude on |1>.
    Matrix block = ancilla_zero_block(seq.unitary(), 1);
    EXPECT_NEAR(block(1, 0).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(block(0, 1).real(), -1 / std::sqrt(2.0), 1e-15);
    GateSequence ph{1, {gate::GlobalPhase{0.5}}};
    EXPECT_LT((ph.unitary() - std::polar(1.0, 0.5) * Matrix::Identity(4, 4)).norm(), 1e-15);
}

TEST(msgates, compile_slice_endpoints) {
    auto inst = paper_instance();
    auto last = compile_slice(inst, 10, 10, 0.05);
    for (const auto &op : last.ops) {
        if (auto r = std::get_if<gate::LocalRotation>(&op)) {
            EXPECT_NE(r->axis, Axis::x);
        }
    }
    EXPECT_EQ(last.ms_count(), 26u);
    auto first = compile_slice(inst, 0, 10, 0.05);
    EXPECT_EQ(first.ms_count(), 0u);
    EXPECT_THROW(compile_slice(inst, 11, 10, 0.05), ValidationError);
}

TEST(msgates, compiled_slice_matches_dense_slice) {
    auto inst = paper_instance();
    for (auto [j, k, tau] : std::vector<std::tuple<int, int, double>>{{5, 10, 0.05}, {1, 3, 0.4}, {97, 100, 0.9}}) {
        Matrix block = ancilla_zero_block(compile_slice(inst, j, k, tau).unitary(), 4);
        Matrix dense = rtf_slice_operator(inst, j, k, tau);
        EXPECT_LE(spectral_distance(block, dense), 1e-9) << j << "/" << k;
    }
}

TEST(msgates, composed_slices_reproduce_rtf_run) {
    auto inst = paper_instance();
    auto sched = RtfSchedule::uniform(1.5, 12, 2, 3, 4);
    StateVector reg = StateVector::Zero(32);
    reg.head(16) = uniform_superposition(4);
    for (int j = 1; j <= 12; j++) {
        compile_slice(inst, j, 12, sched.intervals[j - 1]).apply(reg);
    }
    StateVector expected = rtf_run(inst, sched).final_state;
    EXPECT_LT((reg.head(16) - expected).norm(), 12 * 1e-8);
}

TEST(msgates, listing_format) {
    auto seq = x_string_via_ms(0.25, {1, 2}, 2);
    EXPECT_EQ(seq.listing(),
              "MS theta=1.57079632679 phi=0 qubits=0,1,2\n"
              "ANC axis=z angle=0.5\n"
              "MS theta=-1.57079632679 phi=0 qubits=0,1,2\n");
    GateSequence other{2, {gate::LocalRotation{2, Axis::x, 0.125}, gate::GlobalPhase{-1}}};
    EXPECT_EQ(other.listing(), "ROT q=2 axis=x angle=0.125\nPHASE angle=-1\n");
}

TEST(msgates, dense_cap) {
    EXPECT_THROW(u_ms(0.1, 0, kDenseMatrixQubitCap + 1), CapExceeded);
    EXPECT_THROW(verify_ms_identity(0.1, kDenseMatrixQubitCap), CapExceeded);
}
