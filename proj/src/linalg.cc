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

#include "ec3lab/linalg.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ec3lab/errors.h"

namespace ec3lab {

namespace {

template <typename M>
Matrix expm_from_solver(const Eigen::SelfAdjointEigenSolver<M> &solver, double scale) {
    if (solver.info() != Eigen::Success) {
        throw NumericError("Hermitian eigendecomposition failed to converge");
    }
    const auto &vals = solver.eigenvalues();
    Vector phases(vals.size());
    for (Eigen::Index i = 0; i < vals.size(); i++) {
        phases[i] = std::polar(1.0, -scale * vals[i]);
    }
    Matrix vecs = solver.eigenvectors().template cast<cplx>();
    return vecs * phases.asDiagonal() * vecs.adjoint();
}

}  // namespace

Matrix expm_hermitian(const Matrix &h, double scale) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    return expm_from_solver(solver, scale);
}

Matrix expm_hermitian(const RealMatrix &h, double scale) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
    return expm_from_solver(solver, scale);
}

double spectral_distance(const Matrix &a, const Matrix &b) {
    Eigen::JacobiSVD<Matrix> svd(a - b);
    return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

double spectral_distance_up_to_phase(const Matrix &a, const Matrix &b) {
    // Align on the trace overlap; exact whenever a and b differ only by a phase.
    cplx overlap = (b.adjoint() * a).trace();
    cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
    return spectral_distance(a, phase * b);
}

double unitarity_defect(const Matrix &u) {
    return spectral_distance(u.adjoint() * u, Matrix::Identity(u.rows(), u.cols()));
}

double trace_distance(const StateVector &a, const StateVector &b) {
    cplx overlap = b.dot(a);
    cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
    double d = (a - phase * b).norm();
    // For unit vectors d^2 = 2 - 2|<a|b>|, hence 1 - |<a|b>|^2 = d^2 (1 - d^2/4).
    return d * std::sqrt(std::max(0.0, 1.0 - d * d / 4.0));
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

namespace pauli_matrix {
Matrix identity() {
    return Matrix::Identity(2, 2);
}
Matrix x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
Matrix y() {
    Matrix m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}
Matrix z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
}  // namespace pauli_matrix

}  // namespace ec3lab
