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

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace ec3lab {

using cplx = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Unit-norm amplitudes over 2^n basis states, bit 1 as the most significant index bit.
using StateVector = Eigen::VectorXcd;

/// Largest number of qubits for which full 2^n x 2^n matrices are built.
inline constexpr int kDenseMatrixQubitCap = 12;

/// exp(-i * scale * H) for Hermitian H, via eigendecomposition.
Matrix expm_hermitian(const Matrix &h, double scale);
Matrix expm_hermitian(const RealMatrix &h, double scale);

/// Largest singular value of a - b.
double spectral_distance(const Matrix &a, const Matrix &b);

/// min over global phase of ||a - b||_2 (spectral norm).
double spectral_distance_up_to_phase(const Matrix &a, const Matrix &b);

/// ||U^dagger U - I||_2.
double unitarity_defect(const Matrix &u);

/// Trace distance between the pure states |a> and |b>: sqrt(1 - |<a|b>|^2).
/// Evaluated through the phase-aligned Euclidean distance so that it stays
/// accurate when the overlap is within rounding of 1.
double trace_distance(const StateVector &a, const StateVector &b);

/// Kronecker product a (x) b with a acting on the more significant qubits.
Matrix kron(const Matrix &a, const Matrix &b);

namespace pauli_matrix {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
}  // namespace pauli_matrix

}  // namespace ec3lab
