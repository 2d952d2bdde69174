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

#include <string>
#include <variant>
#include <vector>

#include "ec3lab/linalg.h"
#include "ec3lab/problem.h"

namespace ec3lab {

// Register layout for every gate sequence: qubit 0 is the ancilla and
// qubits 1..n are the system bits, qubit 0 being the most significant bit of
// the register index. Single-qubit rotation angles follow R_a(angle) = exp(-i angle/2 sigma_a).

enum class Axis { x, y, z };

char axis_name(Axis axis);

namespace gate {

/// U_MS(theta, phi) = exp(-i theta/4 (cos phi S_x + sin phi S_y)^2) with S
/// summed over `qubits` (which include the ancilla).
struct MolmerSorensen {
    double theta;
    double phi;
    std::vector<int> qubits;
};

/// R_axis(angle) on the ancilla.
struct AncillaRotation {
    Axis axis;
    double angle;
};

/// R_axis(angle) on one register qubit.
struct LocalRotation {
    int qubit;
    Axis axis;
    double angle;
};

/// Multiplies the register by exp(i angle).
struct GlobalPhase {
    double angle;
};

}  // namespace gate

using GateOp = std::variant<gate::MolmerSorensen, gate::AncillaRotation, gate::LocalRotation, gate::GlobalPhase>;

/// Ops in time order on an (n_system + 1)-qubit register.
struct GateSequence {
    int n_system = 1;
    std::vector<GateOp> ops;

    void append(const GateSequence &other);

    /// One op per line: "MS theta=<f> phi=<f> qubits=<i,j,..>", "ANC axis=<y|z> angle=<f>",
    /// "ROT q=<i> axis=<x|y|z> angle=<f>", "PHASE angle=<f>".
    std::string listing() const;

    /// Dense register unitary (last op leftmost). Throws CapExceeded above 12 register qubits.
    Matrix unitary() const;

    /// Applies the ops to a register state of dimension 2^(n_system + 1).
    void apply(StateVector &state) const;

    size_t ms_count() const;
};

/// Dense U_MS(theta, phi) on n_total qubits, all of them addressed.
Matrix u_ms(double theta, double phi, int n_total);

/// Ancilla-local U_anc(phi) embedded on the (n + 1)-qubit register:
/// n = 4m+1: exp(-i phi Y_0); n = 4m-1: exp(+i phi Y_0);
/// n = 4m: exp(+i phi Z_0); n = 4m-2: exp(-i phi Z_0).
Matrix u_anc(double phi, int n);

/// The same rule as a gate op.
gate::AncillaRotation ancilla_rule(double phi, int n);

struct MsIdentityDeviation {
    /// ||R - I_anc (x) exp(i phi X^n)||_2.
    double global;
    /// ||<0|R|0>_anc - exp(i phi X^n)||_2.
    double subspace;
};

/// R = U_MS(-pi/2, 0) U_anc(phi) U_MS(pi/2, 0) on n + 1 qubits, compared with
/// the closed form exp(i phi X^n) = cos(phi) I + i sin(phi) X^n in both embeddings.
/// R equals exp(i phi Z_0 (x) X^n), so only the ancilla-|0> embedding vanishes.
MsIdentityDeviation verify_ms_identity(double phi, int n);

/// exp(i phi X-string) on the given system qubits via two MS gates and the
/// ancilla rule for n = |support|. The ancilla returns to |0> when it starts there.
GateSequence x_string_via_ms(double phi, const std::vector<int> &support, int n_system);

/// exp(i phi Z-string): x_string_via_ms conjugated by R_y(pi/2) on each support
/// qubit (R_y(pi/2) Z R_y(pi/2)^dagger = X). phi = 0 yields an empty sequence.
GateSequence z_string_via_ms(double phi, const std::vector<int> &support, int n_system);

/// Gate form of exp(-i H_B (1 - j/k) tau_j) exp(-i H_P (j/k) tau_j): the H_P
/// factor as one MS conjugation per Z-string, then x-rotations for H_B.
/// Identity coefficients become explicit global phases.
GateSequence compile_slice(const Ec3Instance &inst, int64_t j, int64_t k, double tau_j);

/// The ancilla-|0> block of a register operator (a 2^n x 2^n system operator).
Matrix ancilla_zero_block(const Matrix &register_op, int n_system);

}  // namespace ec3lab
