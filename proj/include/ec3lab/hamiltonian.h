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

#include <map>
#include <string>
#include <vector>

#include "ec3lab/linalg.h"
#include "ec3lab/problem.h"

namespace ec3lab {

/// A weighted tensor product of single-qubit Paulis. letters[i] acts on bit i+1.
struct PauliString {
    std::string letters;
    double coefficient;

    /// "Z1Z2Z3", "X2", or "I" for the identity string.
    std::string label() const;
};

/// Real-weighted sum of distinct Pauli strings on n qubits; always Hermitian.
/// Terms are kept in lexicographic letter order with coefficients merged.
class PauliSum {
   public:
    explicit PauliSum(int n_bits);

    /// Adds coefficient to the term with these letters (created if absent).
    /// Throws ValidationError for a wrong length, a letter outside IXYZ, or a
    /// non-finite coefficient.
    void add(const std::string &letters, double coefficient);

    int n_bits() const {
        return n_bits_;
    }
    std::vector<PauliString> terms() const;
    size_t size() const {
        return terms_.size();
    }
    /// Zero when the string is absent.
    double coefficient(const std::string &letters) const;
    /// Coefficient addressed by label, e.g. "Z1Z3" or "I".
    double coefficient_of(const std::string &label) const;

    /// Dense 2^n x 2^n matrix. Throws CapExceeded above kDenseMatrixQubitCap.
    Matrix to_matrix() const;

   private:
    int n_bits_;
    std::map<std::string, double> terms_;
};

/// Converts "Z1Z3" to "ZIZI" for n = 4.
std::string letters_from_label(const std::string &label, int n_bits);

/// Real diagonal operator in the computational basis.
struct DiagonalOperator {
    std::vector<double> entries;

    int n_bits() const;
};

inline constexpr int kDiagonalQubitCap = 20;

/// Sum over clauses of 1/2 (1 - X_i) for each of the clause's three bits.
/// A bit in m clauses carries weight m: w0 I - sum_i (w_i / 2) X_i.
PauliSum build_hb(const Ec3Instance &inst);

/// Violated-clause counts on the diagonal. Throws CapExceeded above kDiagonalQubitCap.
DiagonalOperator build_hp_diagonal(const Ec3Instance &inst);

/// Walsh-Hadamard expansion of a diagonal over {I, Z} strings; exact zeros dropped.
PauliSum diagonal_to_pauli(const DiagonalOperator &diag);

/// Z-string form of the problem Hamiltonian. Every string supported inside
/// some clause is listed, even with a zero coefficient, so the three-body
/// structure is visible; strings outside that set are always zero and omitted.
PauliSum hp_to_pauli(const Ec3Instance &inst);

/// Re-evaluates the diagonal of a {I, Z}-only sum.
DiagonalOperator pauli_to_diagonal(const PauliSum &sum);

RealMatrix hb_matrix(const Ec3Instance &inst);
RealMatrix hp_matrix(const Ec3Instance &inst);

/// (1 - s) H_B + s H_P with unit strength. Throws ValidationError outside s in [0, 1].
RealMatrix h0_matrix(const Ec3Instance &inst, double s);

inline constexpr double kDefaultDegeneracyTol = 1e-8;

struct GroundSpace {
    double energy;
    /// Orthonormal columns spanning every eigenvector within tolerance of the minimum.
    Matrix basis;

    int degeneracy() const {
        return static_cast<int>(basis.cols());
    }
};

/// Throws ValidationError if h is not Hermitian within 1e-10 and NumericError if
/// the eigensolver does not converge.
GroundSpace ground_space(const Matrix &h, double degeneracy_tol = kDefaultDegeneracyTol);
GroundSpace ground_space(const RealMatrix &h, double degeneracy_tol = kDefaultDegeneracyTol);

/// Exact fraction when the denominator is a power of two ("3/8", "-1/4", "0"),
/// shortest round-trip decimal otherwise.
std::string format_dyadic(double value);

/// One "label coefficient" line per term, in the sum's canonical order.
std::string format_pauli_table(const PauliSum &sum);

}  // namespace ec3lab
