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

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ec3lab/hamiltonian.h"
#include "ec3lab/linalg.h"
#include "ec3lab/problem.h"
#include "ec3lab/signals.h"

namespace ec3lab {

enum class Backend {
    /// Exact exponential of the Hamiltonian frozen at each sub-step midpoint.
    dense_midpoint,
    /// exp(-i a H_B h/2) exp(-i b H_P h) exp(-i a H_B h/2) with single-qubit
    /// rotations and a diagonal phase; no dense matrices in the step.
    split_strang,
};

Backend parse_backend(std::string_view text);
std::string backend_name(Backend backend);

struct ScheduleConfig {
    double total_time = 1.0;
    int64_t steps = 100;
    SignalSpec signal = signal::Zero{};
    Backend backend = Backend::dense_midpoint;
    /// Record a trace row every this many sub-steps (the final step is always recorded).
    int64_t record_every = 1;
    /// Overall Hamiltonian strength J0: H(t) = J0 (1 + c(t)/J0) [(1 - t/T) H_B + (t/T) H_P].
    double strength = 1.0;
};

/// Throws ValidationError unless T > 0, steps > 0, record_every > 0,
/// strength > 0, the signal is valid, and T/steps respects max_substep(signal).
void validate(const ScheduleConfig &cfg);

/// Sub-step count used when none is given: 100 per unit time, scaled by the
/// peak dressed coefficient and strength, and never coarser than the signal allows.
int64_t default_steps(double total_time, const SignalSpec &signal, double strength = 1.0);

struct TraceRow {
    double t_over_T;
    double fidelity;
    /// Sampled 1 + c(t)/J0 (for RTF traces: tau_j / tau).
    double coefficient;
};

struct FidelityTrace {
    std::vector<TraceRow> rows;
    double final_fidelity = 0.0;
    StateVector final_state;
    /// States at each recorded row; only filled when requested.
    std::vector<StateVector> states;

    /// Header "t_over_T,fidelity,coefficient", 12 significant digits per value.
    std::string to_csv() const;
};

/// The ground state of every H_B: all amplitudes 2^{-n/2}.
StateVector uniform_superposition(int n_bits);

/// Norm of the projection of state onto the ground space; |<psi|psi0>| when non-degenerate.
double fidelity(const StateVector &state, const GroundSpace &gs);

/// Time-ordered evolution under the dressed Hamiltonian, starting from
/// `initial` (default: uniform superposition). Sub-steps are split at signal
/// discontinuities so piecewise-constant signals are exact on every piece.
/// Fidelity is measured against the ground space of the undressed H0(t/T);
/// a non-negative scalar prefactor does not change eigenvectors.
/// Throws NumericError if the norm drifts by more than 1e-9.
FidelityTrace propagate(
    const Ec3Instance &inst, const ScheduleConfig &cfg, const std::optional<StateVector> &initial = std::nullopt,
    bool keep_states = false);

/// Randomized Trotter schedule: k slices of nominal width tau = T/k with actual widths tau_j.
struct RtfSchedule {
    int64_t k = 1;
    double tau = 1.0;
    std::vector<double> intervals;

    /// Every tau_j = tau.
    static RtfSchedule fixed(double total_time, int64_t k);
    /// tau_j = u_j tau with u_j uniform in [lo, hi], u_j = lo + (hi - lo) counter_uniform(seed, j).
    static RtfSchedule uniform(double total_time, int64_t k, double lo, double hi, uint64_t seed);
    /// tau_j = (1 + c(j tau)/J0) tau.
    static RtfSchedule from_signal(double total_time, int64_t k, const SignalSpec &signal);

    double nominal_time() const {
        return static_cast<double>(k) * tau;
    }
};

/// CLI rule syntax: "fixed" or "uniform:lo=<f>,hi=<f>" (multipliers of tau).
struct RtfRule {
    bool fixed = true;
    double lo = 1.0;
    double hi = 1.0;

    RtfSchedule schedule(double total_time, int64_t k, uint64_t seed) const;
    std::string str() const;
};
RtfRule parse_rtf_rule(std::string_view text);

/// Applies exp(-i H_B (1 - j/k) tau_j) exp(-i H_P (j/k) tau_j) for j = 1..k,
/// each factor exact, and records fidelity against the ground space of
/// H0(j/k) after every `record_every`-th slice (time axis j/k).
FidelityTrace rtf_run(
    const Ec3Instance &inst, const RtfSchedule &sched, int64_t record_every = 1, bool keep_states = false);

/// Dense single-slice operator exp(-i H_B (1 - j/k) tau_j) exp(-i H_P (j/k) tau_j).
Matrix rtf_slice_operator(const Ec3Instance &inst, int64_t j, int64_t k, double tau_j);

/// ||exp(-i H0(j/k) tau_j) - exp(-i (1 + c) H0(j/k) tau)||_2 with tau_j = (1 + c) tau.
double slice_equivalence_check(const Ec3Instance &inst, int64_t j, int64_t k, double c_over_j0, double tau);

struct ScaleCheckResult {
    double max_deviation;
    double reference_final_fidelity;
    double scaled_final_fidelity;
    int64_t reference_steps;
    int64_t scaled_steps;
};

/// Evolves psi under H0(t/T0) for T0 and psi' under J H0(t/T) for T = T0/J,
/// both with the dense backend at the same sub-step width (the scaled run gets
/// steps/J sub-steps), and returns max_m ||psi'(t_m/J) - psi(t_m)|| over
/// `samples` equally spaced times. Step counts are rounded up to multiples of `samples`.
ScaleCheckResult scale_check(const Ec3Instance &inst, double J, double T0, int64_t steps, int64_t samples = 16);

/// Final fidelity of a dense run at default_steps (or `steps_per_unit` * T if given).
double final_fidelity(
    const Ec3Instance &inst, const SignalSpec &signal, double total_time, double steps_per_unit = 0,
    Backend backend = Backend::dense_midpoint);

struct ThresholdResult {
    bool found = false;
    /// Smallest runtime meeting the threshold, to 1% relative precision.
    double t_star = 0;
    /// Best (T, F) seen; meaningful when not found.
    double best_T = 0;
    double best_F = 0;
    /// Whether the coarse scan (up to the first crossing) was monotone non-decreasing in T.
    bool monotone_scan = true;
};

struct ThresholdOptions {
    double t_min = 1.0;
    double t_max = 400.0;
    /// Ratio between consecutive coarse-scan runtimes.
    double scan_ratio = 1.1;
    double rel_precision = 0.01;
    double steps_per_unit = 0;
    unsigned jobs = 1;
};

/// Scans T geometrically across [t_min, t_max], then bisects the first
/// bracket where the final fidelity crosses f_threshold. Taking the first
/// crossing of the scan keeps the search meaningful when F(T) is not monotone.
ThresholdResult min_runtime_for_threshold(
    const Ec3Instance &inst, const SignalSpec &signal, double f_threshold, const ThresholdOptions &opts = {});

struct EnsembleStats {
    double mean;
    /// Standard error of the mean (sample standard deviation / sqrt(count)).
    double std_error;
    std::vector<double> values;
};

/// Final RTF fidelity for each seed, run in parallel; order follows `seeds`.
EnsembleStats rtf_seed_average(
    const Ec3Instance &inst, const RtfRule &rule, double total_time, int64_t k, const std::vector<uint64_t> &seeds,
    unsigned jobs = 1);

}  // namespace ec3lab
