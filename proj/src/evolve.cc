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

#include "ec3lab/evolve.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ec3lab/errors.h"
#include "ec3lab/parallel.h"

namespace ec3lab {

namespace {

constexpr double kNormTolerance = 1e-9;

/// Structured pieces of H_B and H_P shared by both backends and the RTF.
class Dynamics {
   public:
    explicit Dynamics(const Ec3Instance &inst) : n_(inst.n_bits()), hb_(hb_matrix(inst)) {
        auto d = build_hp_diagonal(inst);
        hp_ = Eigen::Map<const Eigen::VectorXd>(d.entries.data(), d.entries.size());
        auto w = inst.bit_multiplicities();
        for (int i = 0; i < n_; i++) {
            half_weights_.push_back(0.5 * w[i]);
            identity_ += 0.5 * w[i];
        }
    }

    int n_bits() const {
        return n_;
    }

    RealMatrix h0(double s) const {
        RealMatrix h = (1.0 - s) * hb_;
        h.diagonal() += s * hp_;
        return h;
    }

    /// psi <- exp(-i theta H_B) psi as a product of commuting x-rotations.
    void apply_hb(StateVector &psi, double theta) const {
        const uint64_t dim = psi.size();
        for (int i = 0; i < n_; i++) {
            double angle = theta * half_weights_[i];
            if (angle == 0) {
                continue;
            }
            const cplx c(std::cos(angle), 0.0);
            const cplx is(0.0, std::sin(angle));
            const uint64_t mask = uint64_t{1} << (n_ - 1 - i);
            for (uint64_t x = 0; x < dim; x++) {
                if (x & mask) {
                    continue;
                }
                cplx a = psi[x];
                cplx b = psi[x | mask];
                psi[x] = c * a + is * b;
                psi[x | mask] = is * a + c * b;
            }
        }
        psi *= std::polar(1.0, -theta * identity_);
    }

    /// psi <- exp(-i theta H_P) psi.
    void apply_hp(StateVector &psi, double theta) const {
        for (Eigen::Index x = 0; x < psi.size(); x++) {
            psi[x] *= std::polar(1.0, -theta * hp_[x]);
        }
    }

    /// psi <- exp(-i scale H0(s)) psi via the eigendecomposition of H0(s).
    void apply_dense(StateVector &psi, double s, double scale) const {
        Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h0(s));
        if (solver.info() != Eigen::Success) {
            throw NumericError("eigendecomposition of H0 failed during propagation");
        }
        const RealMatrix &v = solver.eigenvectors();
        Vector coeffs = v.transpose() * psi;
        for (Eigen::Index i = 0; i < coeffs.size(); i++) {
            coeffs[i] *= std::polar(1.0, -scale * solver.eigenvalues()[i]);
        }
        psi = v * coeffs;
    }

    double fidelity_at(const StateVector &psi, double s) const {
        return fidelity(psi, ground_space(h0(s)));
    }

   private:
    int n_;
    RealMatrix hb_;
    Eigen::VectorXd hp_;
    std::vector<double> half_weights_;
    double identity_ = 0;
};

void check_norm(const StateVector &psi, const char *where) {
    double drift = std::abs(psi.norm() - 1.0);
    if (drift > kNormTolerance) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s: state norm drifted by %.3e (tolerance %.0e)", where, drift, kNormTolerance);
        throw NumericError(buf);
    }
}

StateVector initial_state(const Ec3Instance &inst, const std::optional<StateVector> &initial) {
    if (!initial) {
        return uniform_superposition(inst.n_bits());
    }
    if (initial->size() != (Eigen::Index{1} << inst.n_bits())) {
        throw ValidationError("initial state dimension does not match the instance");
    }
    check_norm(*initial, "initial state");
    return *initial;
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

Backend parse_backend(std::string_view text) {
    if (text == "dense" || text == "dense_midpoint") {
        return Backend::dense_midpoint;
    }
    if (text == "split" || text == "split_strang") {
        return Backend::split_strang;
    }
    throw ParseError("unknown backend '" + std::string(text) + "' (expected dense_midpoint or split_strang)");
}

std::string backend_name(Backend backend) {
    return backend == Backend::dense_midpoint ? "dense_midpoint" : "split_strang";
}

void validate(const ScheduleConfig &cfg) {
    if (!(cfg.total_time > 0) || !std::isfinite(cfg.total_time)) {
        throw ValidationError("total time T must be finite and > 0");
    }
    if (cfg.steps <= 0) {
        throw ValidationError("steps must be positive");
    }
    if (cfg.record_every <= 0) {
        throw ValidationError("record_every must be positive");
    }
    if (!(cfg.strength > 0) || !std::isfinite(cfg.strength)) {
        throw ValidationError("strength must be finite and > 0");
    }
    validate(cfg.signal);
    double h = cfg.total_time / static_cast<double>(cfg.steps);
    double limit = max_substep(cfg.signal);
    if (h > limit * (1 + 1e-12)) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "sub-step h = %.6g exceeds the limit %.6g for signal %s (use at least %lld steps)",
                      h, limit, format_signal(cfg.signal).c_str(),
                      static_cast<long long>(std::ceil(cfg.total_time / limit)));
        throw ValidationError(buf);
    }
}

int64_t default_steps(double total_time, const SignalSpec &signal, double strength) {
    double per_unit = 100.0 * std::max(1.0, strength * peak_coefficient(signal));
    auto steps = static_cast<int64_t>(std::ceil(total_time * per_unit - 1e-9));
    double limit = max_substep(signal);
    if (std::isfinite(limit)) {
        steps = std::max(steps, static_cast<int64_t>(std::ceil(total_time / limit - 1e-9)));
    }
    return std::max<int64_t>(steps, 1);
}

std::string FidelityTrace::to_csv() const {
    std::ostringstream out;
    out << "t_over_T,fidelity,coefficient\n";
    for (const auto &r : rows) {
        out << fmt12(r.t_over_T) << "," << fmt12(r.fidelity) << "," << fmt12(r.coefficient) << "\n";
    }
    return out.str();
}

StateVector uniform_superposition(int n_bits) {
    const Eigen::Index dim = Eigen::Index{1} << n_bits;
    return StateVector::Constant(dim, cplx(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

double fidelity(const StateVector &state, const GroundSpace &gs) {
    if (state.size() != gs.basis.rows()) {
        throw ValidationError("fidelity: state and ground space dimensions differ");
    }
    return (gs.basis.adjoint() * state).norm();
}

FidelityTrace propagate(
    const Ec3Instance &inst, const ScheduleConfig &cfg, const std::optional<StateVector> &initial, bool keep_states) {
    validate(cfg);
    const Dynamics dyn(inst);
    StateVector psi = initial_state(inst, initial);
    const double T = cfg.total_time;
    const double h = T / static_cast<double>(cfg.steps);
    const double merge_tol = 1e-12 * std::max(1.0, T);

    FidelityTrace trace;
    auto record = [&](int64_t m) {
        double s = static_cast<double>(m) / static_cast<double>(cfg.steps);
        double F = dyn.fidelity_at(psi, s);
        trace.rows.push_back({s, F, dressed_coefficient(cfg.signal, s * T)});
        if (keep_states) {
            trace.states.push_back(psi);
        }
    };
    record(0);

    for (int64_t m = 0; m < cfg.steps; m++) {
        const double t0 = static_cast<double>(m) * h;
        const double t1 = m + 1 == cfg.steps ? T : static_cast<double>(m + 1) * h;
        double a = t0;
        while (a < t1) {
            double b = next_breakpoint(cfg.signal, a);
            if (b >= t1 - merge_tol) {
                b = t1;
            }
            const double mid = 0.5 * (a + b);
            const double dt = b - a;
            const double s = mid / T;
            const double coeff = cfg.strength * dressed_coefficient(cfg.signal, mid);
            if (cfg.backend == Backend::dense_midpoint) {
                dyn.apply_dense(psi, s, coeff * dt);
            } else {
                const double hb_scale = coeff * (1.0 - s) * dt;
                dyn.apply_hb(psi, 0.5 * hb_scale);
                dyn.apply_hp(psi, coeff * s * dt);
                dyn.apply_hb(psi, 0.5 * hb_scale);
            }
            a = b;
        }
        if ((m + 1) % cfg.record_every == 0 || m + 1 == cfg.steps) {
            record(m + 1);
        }
    }
    check_norm(psi, "propagate");
    trace.final_fidelity = trace.rows.back().fidelity;
    trace.final_state = std::move(psi);
    return trace;
}

RtfSchedule RtfSchedule::fixed(double total_time, int64_t k) {
    if (k <= 0 || !(total_time > 0)) {
        throw ValidationError("RTF schedule needs k > 0 and T > 0");
    }
    RtfSchedule s;
    s.k = k;
    s.tau = total_time / static_cast<double>(k);
    s.intervals.assign(k, s.tau);
    return s;
}

RtfSchedule RtfSchedule::uniform(double total_time, int64_t k, double lo, double hi, uint64_t seed) {
    if (!(lo > 0) || lo > hi || !std::isfinite(hi)) {
        throw ValidationError("RTF uniform rule needs 0 < lo <= hi");
    }
    RtfSchedule s = fixed(total_time, k);
    for (int64_t j = 1; j <= k; j++) {
        s.intervals[j - 1] = (lo + (hi - lo) * counter_uniform(seed, static_cast<uint64_t>(j))) * s.tau;
    }
    return s;
}

RtfSchedule RtfSchedule::from_signal(double total_time, int64_t k, const SignalSpec &signal) {
    validate(signal);
    RtfSchedule s = fixed(total_time, k);
    for (int64_t j = 1; j <= k; j++) {
        s.intervals[j - 1] = dressed_coefficient(signal, static_cast<double>(j) * s.tau) * s.tau;
    }
    return s;
}

RtfSchedule RtfRule::schedule(double total_time, int64_t k, uint64_t seed) const {
    return fixed ? RtfSchedule::fixed(total_time, k) : RtfSchedule::uniform(total_time, k, lo, hi, seed);
}

std::string RtfRule::str() const {
    if (fixed) {
        return "fixed";
    }
    return "uniform:lo=" + fmt12(lo) + ",hi=" + fmt12(hi);
}

RtfRule parse_rtf_rule(std::string_view text) {
    if (text == "fixed") {
        return RtfRule{};
    }
    // Reuse the signal parameter grammar: "uniform:lo=..,hi=.." reads like a randhold body.
    constexpr std::string_view prefix = "uniform:";
    if (text.substr(0, prefix.size()) != prefix) {
        throw ParseError("unknown RTF rule '" + std::string(text) + "' (expected fixed or uniform:lo=<f>,hi=<f>)");
    }
    auto spec = parse_signal("randhold:" + std::string(text.substr(prefix.size())) + ",delta=1,seed=0");
    const auto &r = std::get<signal::RandomHold>(spec);
    if (!(r.low > 0)) {
        throw ParseError("RTF uniform rule needs lo > 0");
    }
    return RtfRule{false, r.low, r.high};
}

FidelityTrace rtf_run(const Ec3Instance &inst, const RtfSchedule &sched, int64_t record_every, bool keep_states) {
    if (sched.k <= 0 || static_cast<int64_t>(sched.intervals.size()) != sched.k) {
        throw ValidationError("RTF schedule must list exactly k intervals");
    }
    if (record_every <= 0) {
        throw ValidationError("record_every must be positive");
    }
    for (double tj : sched.intervals) {
        if (!(tj > 0) || !std::isfinite(tj)) {
            throw ValidationError("RTF intervals must be finite and > 0");
        }
    }
    const Dynamics dyn(inst);
    StateVector psi = uniform_superposition(inst.n_bits());
    FidelityTrace trace;
    auto record = [&](int64_t j, double coefficient) {
        double s = static_cast<double>(j) / static_cast<double>(sched.k);
        trace.rows.push_back({s, dyn.fidelity_at(psi, s), coefficient});
        if (keep_states) {
            trace.states.push_back(psi);
        }
    };
    record(0, 1.0);
    for (int64_t j = 1; j <= sched.k; j++) {
        const double s = static_cast<double>(j) / static_cast<double>(sched.k);
        const double tj = sched.intervals[j - 1];
        dyn.apply_hp(psi, s * tj);
        dyn.apply_hb(psi, (1.0 - s) * tj);
        if (j % record_every == 0 || j == sched.k) {
            record(j, tj / sched.tau);
        }
    }
    check_norm(psi, "rtf_run");
    trace.final_fidelity = trace.rows.back().fidelity;
    trace.final_state = std::move(psi);
    return trace;
}

Matrix rtf_slice_operator(const Ec3Instance &inst, int64_t j, int64_t k, double tau_j) {
    if (k <= 0 || j < 0 || j > k) {
        throw ValidationError("slice index must satisfy 0 <= j <= k");
    }
    const double s = static_cast<double>(j) / static_cast<double>(k);
    return expm_hermitian(hb_matrix(inst), (1.0 - s) * tau_j) * expm_hermitian(hp_matrix(inst), s * tau_j);
}

double slice_equivalence_check(const Ec3Instance &inst, int64_t j, int64_t k, double c_over_j0, double tau) {
    if (k <= 0 || j < 1 || j > k) {
        throw ValidationError("slice equivalence needs 1 <= j <= k");
    }
    const double s = static_cast<double>(j) / static_cast<double>(k);
    const RealMatrix h0 = h0_matrix(inst, s);
    const double tau_j = (1.0 + c_over_j0) * tau;
    // Two independent eigendecompositions: the undressed H0 over tau_j, the dressed H over tau.
    const Matrix uneven = expm_hermitian(h0, tau_j);
    const RealMatrix dressed = (1.0 + c_over_j0) * h0;
    const Matrix even = expm_hermitian(dressed, tau);
    return spectral_distance(uneven, even);
}

ScaleCheckResult scale_check(const Ec3Instance &inst, double J, double T0, int64_t steps, int64_t samples) {
    if (!(J >= 1) || !std::isfinite(J)) {
        throw ValidationError("scale factor J must be >= 1");
    }
    if (!(T0 > 0) || steps <= 0 || samples <= 0) {
        throw ValidationError("scale_check needs T0 > 0, steps > 0, samples > 0");
    }
    auto round_up = [samples](int64_t v) { return ((std::max<int64_t>(v, 1) + samples - 1) / samples) * samples; };
    ScaleCheckResult result{};
    result.reference_steps = round_up(steps);
    result.scaled_steps = round_up(static_cast<int64_t>(std::ceil(static_cast<double>(steps) / J - 1e-9)));

    ScheduleConfig ref;
    ref.total_time = T0;
    ref.steps = result.reference_steps;
    ref.record_every = result.reference_steps / samples;
    ScheduleConfig fast = ref;
    fast.total_time = T0 / J;
    fast.steps = result.scaled_steps;
    fast.record_every = result.scaled_steps / samples;
    fast.strength = J;

    auto a = propagate(inst, ref, std::nullopt, true);
    auto b = propagate(inst, fast, std::nullopt, true);
    double worst = 0;
    for (size_t m = 0; m < a.states.size(); m++) {
        worst = std::max(worst, (a.states[m] - b.states[m]).norm());
    }
    result.max_deviation = worst;
    result.reference_final_fidelity = a.final_fidelity;
    result.scaled_final_fidelity = b.final_fidelity;
    return result;
}

double final_fidelity(
    const Ec3Instance &inst, const SignalSpec &signal, double total_time, double steps_per_unit, Backend backend) {
    ScheduleConfig cfg;
    cfg.total_time = total_time;
    cfg.signal = signal;
    cfg.backend = backend;
    cfg.steps = steps_per_unit > 0 ? static_cast<int64_t>(std::ceil(total_time * steps_per_unit))
                                   : default_steps(total_time, signal);
    double limit = max_substep(signal);
    if (std::isfinite(limit)) {
        cfg.steps = std::max(cfg.steps, static_cast<int64_t>(std::ceil(total_time / limit - 1e-9)));
    }
    cfg.record_every = cfg.steps;
    return propagate(inst, cfg).final_fidelity;
}

ThresholdResult min_runtime_for_threshold(
    const Ec3Instance &inst, const SignalSpec &signal, double f_threshold, const ThresholdOptions &opts) {
    if (!(opts.t_min > 0) || !(opts.t_max > opts.t_min) || !(opts.scan_ratio > 1) || !(opts.rel_precision > 0)) {
        throw ValidationError("threshold search needs 0 < t_min < t_max, scan_ratio > 1, rel_precision > 0");
    }
    std::vector<double> grid;
    for (double T = opts.t_min; T < opts.t_max; T *= opts.scan_ratio) {
        grid.push_back(T);
    }
    grid.push_back(opts.t_max);
    // Scan in batches of one grid point per worker and stop at the first
    // batch that crosses; long runtimes past the crossing are never needed.
    const size_t batch = resolve_jobs(opts.jobs);
    std::vector<double> F;
    while (F.size() < grid.size()) {
        const size_t offset = F.size();
        const size_t count = std::min(batch, grid.size() - offset);
        auto chunk = parallel_map<double>(count, opts.jobs, [&](size_t i) {
            return final_fidelity(inst, signal, grid[offset + i], opts.steps_per_unit);
        });
        F.insert(F.end(), chunk.begin(), chunk.end());
        if (std::any_of(chunk.begin(), chunk.end(), [&](double f) { return f >= f_threshold; })) {
            break;
        }
    }

    ThresholdResult result;
    for (size_t i = 1; i < F.size(); i++) {
        if (F[i] < F[i - 1]) {
            result.monotone_scan = false;
        }
    }
    auto best = std::max_element(F.begin(), F.end());
    result.best_T = grid[best - F.begin()];
    result.best_F = *best;

    auto first = std::find_if(F.begin(), F.end(), [&](double f) { return f >= f_threshold; });
    if (first == F.end()) {
        return result;
    }
    result.found = true;
    size_t idx = first - F.begin();
    if (idx == 0) {
        result.t_star = grid[0];
        return result;
    }
    double lo = grid[idx - 1];
    double hi = grid[idx];
    while ((hi - lo) > opts.rel_precision * hi) {
        double mid = 0.5 * (lo + hi);
        if (final_fidelity(inst, signal, mid, opts.steps_per_unit) >= f_threshold) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    result.t_star = hi;
    return result;
}

EnsembleStats rtf_seed_average(
    const Ec3Instance &inst, const RtfRule &rule, double total_time, int64_t k, const std::vector<uint64_t> &seeds,
    unsigned jobs) {
    if (seeds.empty()) {
        throw ValidationError("seed list must not be empty");
    }
    EnsembleStats stats{};
    stats.values = parallel_map<double>(seeds.size(), jobs, [&](size_t i) {
        return rtf_run(inst, rule.schedule(total_time, k, seeds[i]), k).final_fidelity;
    });
    double sum = 0;
    for (double v : stats.values) {
        sum += v;
    }
    const double n = static_cast<double>(stats.values.size());
    stats.mean = sum / n;
    double ss = 0;
    for (double v : stats.values) {
        ss += (v - stats.mean) * (v - stats.mean);
    }
    stats.std_error = stats.values.size() > 1 ? std::sqrt(ss / (n - 1)) / std::sqrt(n) : 0.0;
    return stats;
}

}  // namespace ec3lab
