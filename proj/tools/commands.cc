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

#include "commands.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ec3lab/errors.h"
#include "ec3lab/evolve.h"
#include "ec3lab/hamiltonian.h"
#include "ec3lab/msgates.h"
#include "ec3lab/parallel.h"
#include "ec3lab/problem.h"
#include "ec3lab/signals.h"
#include "json.hpp"

namespace ec3lab::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string f12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string f17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    f << content;
    if (!f) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

/// Writes `csv` to `path` and the run manifest next to it as `<path>.manifest.json`.
void write_with_manifest(
    const std::string &path, const std::string &csv, const std::string &command, const nlohmann::json &params,
    Clock::time_point started) {
    write_file(path, csv);
    nlohmann::json manifest;
    manifest["command"] = command;
    manifest["parameters"] = params;
    manifest["tool_version"] = kToolVersion;
    manifest["wall_clock_seconds"] = std::chrono::duration<double>(Clock::now() - started).count();
    write_file(path + ".manifest.json", manifest.dump(2) + "\n");
}

std::vector<double> parse_number_list(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        // "pi", "pi/2", "3pi/4" and plain decimals.
        size_t p = item.find("pi");
        char *end = nullptr;
        if (p == std::string::npos) {
            double v = std::strtod(item.c_str(), &end);
            if (item.empty() || *end != '\0') {
                throw ParseError("not a number: '" + item + "'");
            }
            out.push_back(v);
            continue;
        }
        double mult = 1;
        if (p > 0) {
            std::string head = item.substr(0, p);
            mult = head == "-" ? -1 : std::strtod(head.c_str(), &end);
            if (head != "-" && *end != '\0') {
                throw ParseError("not a number: '" + item + "'");
            }
        }
        double div = 1;
        std::string tail = item.substr(p + 2);
        if (!tail.empty()) {
            if (tail[0] != '/') {
                throw ParseError("not a number: '" + item + "'");
            }
            div = std::strtod(tail.c_str() + 1, &end);
            if (*end != '\0' || div == 0) {
                throw ParseError("not a number: '" + item + "'");
            }
        }
        out.push_back(mult * std::numbers::pi / div);
    }
    if (out.empty()) {
        throw ParseError("empty number list");
    }
    return out;
}

/// "1..5" or "1,3,4".
std::vector<int> parse_int_range(const std::string &text) {
    std::vector<int> out;
    size_t dots = text.find("..");
    try {
        if (dots != std::string::npos) {
            int lo = std::stoi(text.substr(0, dots));
            int hi = std::stoi(text.substr(dots + 2));
            for (int v = lo; v <= hi; v++) {
                out.push_back(v);
            }
        } else {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ',')) {
                out.push_back(std::stoi(item));
            }
        }
    } catch (const std::logic_error &) {
        throw ParseError("bad integer range '" + text + "'");
    }
    if (out.empty()) {
        throw ParseError("empty integer range '" + text + "'");
    }
    return out;
}

/// A signal family is the signal syntax minus its strength parameter
/// ("pulse:delta=0.08,duty=0.5", "cos2:w=10"); the strength fills s or a.
SignalSpec family_member(const std::string &family, double strength) {
    size_t colon = family.find(':');
    std::string kind = family.substr(0, colon);
    std::string body = colon == std::string::npos ? "" : "," + family.substr(colon + 1);
    if (kind == "pulse") {
        return parse_signal("pulse:s=" + f17(strength) + body);
    }
    if (kind == "cos2" || kind == "sin2") {
        return parse_signal(kind + ":a=" + f17(strength) + body);
    }
    throw ParseError("signal family must be pulse, cos2 or sin2, got '" + kind + "'");
}

struct Common {
    std::string instance = "@paper";
    std::string out;
    unsigned jobs = 0;
};

void add_instance(CLI::App *sub, Common &c) {
    sub->add_option("--instance", c.instance, "Instance JSON path, or @paper for the built-in 4-bit instance")
        ->capture_default_str();
}

int cmd_solve(const Common &c, std::ostream &out) {
    auto inst = load_instance(c.instance);
    auto result = brute_force_solutions(inst);
    out << "energy=" << result.min_energy << "\n";
    for (const auto &a : result.assignments) {
        out << a.str() << "\n";
    }
    return result.satisfiable() ? kSuccess : kDomainNegative;
}

struct EvolveArgs {
    double T = 0;
    int64_t steps = 0;
    std::string signal = "zero";
    std::string backend = "dense_midpoint";
    int64_t record_every = 1;
};

int cmd_evolve(const Common &c, const EvolveArgs &a, std::ostream &out) {
    auto started = Clock::now();
    auto inst = load_instance(c.instance);
    ScheduleConfig cfg;
    cfg.total_time = a.T;
    cfg.signal = parse_signal(a.signal);
    cfg.backend = parse_backend(a.backend);
    cfg.steps = a.steps > 0 ? a.steps : default_steps(a.T, cfg.signal);
    cfg.record_every = a.record_every;
    auto trace = propagate(inst, cfg);
    out << "steps=" << cfg.steps << "\n";
    out << "final_fidelity=" << f12(trace.final_fidelity) << "\n";
    if (!c.out.empty()) {
        nlohmann::json p = {{"instance", c.instance},           {"T", a.T},
                            {"steps", cfg.steps},               {"signal", format_signal(cfg.signal)},
                            {"backend", backend_name(cfg.backend)}, {"record_every", cfg.record_every}};
        write_with_manifest(c.out, trace.to_csv(), "evolve", p, started);
    }
    return kSuccess;
}

struct RtfArgs {
    double T = 0;
    int64_t k = 0;
    std::string rule = "fixed";
    uint64_t seed = 0;
    int seeds = 1;
    int64_t record_every = 1;
};

int cmd_rtf(const Common &c, const RtfArgs &a, std::ostream &out) {
    auto started = Clock::now();
    auto inst = load_instance(c.instance);
    auto rule = parse_rtf_rule(a.rule);
    auto trace = rtf_run(inst, rule.schedule(a.T, a.k, a.seed), a.record_every);
    out << "final_fidelity=" << f12(trace.final_fidelity) << "\n";
    if (a.seeds > 1) {
        std::vector<uint64_t> seeds;
        for (int i = 0; i < a.seeds; i++) {
            seeds.push_back(a.seed + static_cast<uint64_t>(i));
        }
        auto stats = rtf_seed_average(inst, rule, a.T, a.k, seeds, c.jobs);
        out << "seed_mean=" << f12(stats.mean) << "\n";
        out << "seed_std_error=" << f12(stats.std_error) << "\n";
    }
    if (!c.out.empty()) {
        nlohmann::json p = {{"instance", c.instance}, {"T", a.T},         {"k", a.k},
                            {"rule", rule.str()},     {"seed", a.seed},   {"seeds", a.seeds},
                            {"record_every", a.record_every}};
        write_with_manifest(c.out, trace.to_csv(), "rtf", p, started);
    }
    return kSuccess;
}

struct SweepArgs {
    std::string family = "pulse:delta=0.08,duty=0.5";
    std::string strengths;
    double T = 0;
    double threshold = 0;
    double t_min = 1;
    double t_max = 400;
    double steps_per_unit = 0;
};

int cmd_sweep(const Common &c, const SweepArgs &a, std::ostream &out) {
    auto started = Clock::now();
    auto inst = load_instance(c.instance);
    auto strengths = parse_number_list(a.strengths);
    for (double s : strengths) {
        family_member(a.family, s);
    }
    const bool threshold_mode = a.threshold > 0;
    if (threshold_mode == (a.T > 0)) {
        throw ParseError("sweep needs exactly one of --T (fixed runtime) or --threshold (minimal runtime)");
    }
    std::ostringstream csv;
    int code = kSuccess;
    if (!threshold_mode) {
        auto F = parallel_map<double>(strengths.size(), c.jobs, [&](size_t i) {
            return final_fidelity(inst, family_member(a.family, strengths[i]), a.T, a.steps_per_unit);
        });
        csv << "s,final_fidelity\n";
        for (size_t i = 0; i < strengths.size(); i++) {
            csv << f12(strengths[i]) << "," << f12(F[i]) << "\n";
        }
    } else {
        ThresholdOptions opts;
        opts.t_min = a.t_min;
        opts.t_max = a.t_max;
        opts.steps_per_unit = a.steps_per_unit;
        opts.jobs = c.jobs;
        csv << "s,t_star,status,best_T,best_F\n";
        for (double s : strengths) {
            auto r = min_runtime_for_threshold(inst, family_member(a.family, s), a.threshold, opts);
            if (!r.found) {
                code = kDomainNegative;
            }
            csv << f12(s) << "," << (r.found ? f12(r.t_star) : "nan") << "," << (r.found ? "found" : "unreachable")
                << "," << f12(r.best_T) << "," << f12(r.best_F) << "\n";
        }
    }
    out << csv.str();
    if (!c.out.empty()) {
        nlohmann::json p = {{"instance", c.instance}, {"family", a.family},   {"strengths", a.strengths},
                            {"T", a.T},               {"threshold", a.threshold}, {"t_min", a.t_min},
                            {"t_max", a.t_max},       {"steps_per_unit", a.steps_per_unit}};
        write_with_manifest(c.out, csv.str(), "sweep", p, started);
    }
    return code;
}

struct ScaleArgs {
    double J = 2;
    double T0 = 160;
    int64_t steps = 0;
    int64_t samples = 16;
};

int cmd_scale_check(const Common &c, const ScaleArgs &a, std::ostream &out) {
    auto inst = load_instance(c.instance);
    int64_t steps = a.steps > 0 ? a.steps : static_cast<int64_t>(std::ceil(a.T0 * 200 * a.J));
    auto r = scale_check(inst, a.J, a.T0, steps, a.samples);
    out << "reference_steps=" << r.reference_steps << "\n";
    out << "scaled_steps=" << r.scaled_steps << "\n";
    out << "max_deviation=" << f12(r.max_deviation) << "\n";
    out << "reference_final_fidelity=" << f12(r.reference_final_fidelity) << "\n";
    out << "scaled_final_fidelity=" << f12(r.scaled_final_fidelity) << "\n";
    return r.max_deviation <= 1e-6 ? kSuccess : kDomainNegative;
}

struct MsArgs {
    std::string n = "1..5";
    std::string phi = "0.3,pi/2,1.7";
    bool gates = false;
};

int cmd_ms_verify(const MsArgs &a, std::ostream &out) {
    auto ns = parse_int_range(a.n);
    auto phis = parse_number_list(a.phi);
    bool all_pass = true;
    out << "n phi rule global_dev subspace_dev pass\n";
    for (int n : ns) {
        for (double phi : phis) {
            auto dev = verify_ms_identity(phi, n);
            auto rule = ancilla_rule(phi, n);
            bool pass = dev.subspace <= 1e-10;
            all_pass = all_pass && pass;
            char line[200];
            std::snprintf(line, sizeof line, "%d %.12g n%%4=%d:%c %.3e %.3e %s\n", n, phi, n % 4,
                          axis_name(rule.axis), dev.global, dev.subspace, pass ? "PASS" : "FAIL");
            out << line;
            if (a.gates || (ns.size() == 1 && phis.size() == 1)) {
                std::vector<int> support;
                for (int q = 1; q <= n; q++) {
                    support.push_back(q);
                }
                out << x_string_via_ms(phi, support, n).listing();
            }
        }
    }
    return all_pass ? kSuccess : kDomainNegative;
}

struct CompileArgs {
    int64_t j = 1;
    int64_t k = 1;
    double tau_j = 0.05;
    bool verify = false;
};

int cmd_compile(const Common &c, const CompileArgs &a, std::ostream &out) {
    auto inst = load_instance(c.instance);
    auto seq = compile_slice(inst, a.j, a.k, a.tau_j);
    out << seq.listing();
    if (a.verify) {
        Matrix compiled = ancilla_zero_block(seq.unitary(), inst.n_bits());
        double dev = spectral_distance(compiled, rtf_slice_operator(inst, a.j, a.k, a.tau_j));
        out << "# deviation_from_dense_slice=" << f12(dev) << "\n";
        return dev <= 1e-9 ? kSuccess : kDomainNegative;
    }
    return kSuccess;
}

int cmd_dump(const Common &c, std::ostream &out) {
    auto inst = load_instance(c.instance);
    out << "# H_P\n" << format_pauli_table(hp_to_pauli(inst));
    out << "# H_B\n" << format_pauli_table(build_hb(inst));
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Fast-signal adiabatic EC3 laboratory", "ec3lab"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    Common common;
    std::function<int()> action;

    auto *solve = app.add_subcommand("solve", "Exhaustively solve an instance");
    add_instance(solve, common);
    solve->callback([&] { action = [&] { return cmd_solve(common, out); }; });

    EvolveArgs ev;
    auto *evolve = app.add_subcommand("evolve", "Dressed Schrodinger evolution with fidelity trace");
    add_instance(evolve, common);
    evolve->add_option("--T", ev.T, "Runtime T")->required()->check(CLI::PositiveNumber);
    evolve->add_option("--steps", ev.steps, "Sub-steps (default: automatic)");
    evolve->add_option("--signal", ev.signal, "Signal: zero | pulse:s=,delta=,duty= | cos2:a=,w= | sin2:a=,w= | randhold:lo=,hi=,delta=,seed=")
        ->capture_default_str();
    evolve->add_option("--backend", ev.backend, "dense_midpoint | split_strang")->capture_default_str();
    evolve->add_option("--record-every", ev.record_every, "Trace decimation")->capture_default_str();
    evolve->add_option("--out", common.out, "CSV output path");
    evolve->callback([&] { action = [&] { return cmd_evolve(common, ev, out); }; });

    RtfArgs rt;
    auto *rtf = app.add_subcommand("rtf", "Randomized Trotter formula run");
    add_instance(rtf, common);
    rtf->add_option("--T", rt.T, "Runtime T = k tau")->required()->check(CLI::PositiveNumber);
    rtf->add_option("--k", rt.k, "Slice count")->required()->check(CLI::PositiveNumber);
    rtf->add_option("--rule", rt.rule, "fixed | uniform:lo=<f>,hi=<f>")->capture_default_str();
    rtf->add_option("--seed", rt.seed, "Seed for random intervals")->capture_default_str();
    rtf->add_option("--seeds", rt.seeds, "Average final fidelity over seeds seed..seed+N-1")
        ->check(CLI::PositiveNumber);
    rtf->add_option("--record-every", rt.record_every, "Trace decimation")->capture_default_str();
    rtf->add_option("--out", common.out, "CSV output path");
    rtf->add_option("--jobs", common.jobs, "Worker threads (0: all cores)");
    rtf->callback([&] { action = [&] { return cmd_rtf(common, rt, out); }; });

    SweepArgs sw;
    auto *sweep = app.add_subcommand("sweep", "Final fidelity or minimal runtime across signal strengths");
    add_instance(sweep, common);
    sweep->add_option("--family", sw.family, "pulse:delta=,duty= | cos2:w= | sin2:w=")->capture_default_str();
    sweep->add_option("--strengths", sw.strengths, "Comma-separated strengths")->required();
    sweep->add_option("--T", sw.T, "Fixed runtime mode");
    sweep->add_option("--threshold", sw.threshold, "Minimal-runtime mode at this fidelity");
    sweep->add_option("--t-min", sw.t_min, "Threshold search lower bound")->capture_default_str();
    sweep->add_option("--t-max", sw.t_max, "Threshold search upper bound")->capture_default_str();
    sweep->add_option("--steps-per-unit", sw.steps_per_unit, "Sub-steps per unit time (default: automatic)");
    sweep->add_option("--out", common.out, "CSV output path");
    sweep->add_option("--jobs", common.jobs, "Worker threads (0: all cores)");
    sweep->callback([&] { action = [&] { return cmd_sweep(common, sw, out); }; });

    ScaleArgs sc;
    auto *scale = app.add_subcommand("scale-check", "Time-scaling check: J H0 over T0/J against H0 over T0");
    add_instance(scale, common);
    scale->add_option("--J", sc.J, "Strength factor")->capture_default_str();
    scale->add_option("--T0", sc.T0, "Reference runtime")->capture_default_str();
    scale->add_option("--steps", sc.steps, "Reference sub-steps (default: 200 J per unit time)");
    scale->add_option("--samples", sc.samples, "Comparison points")->capture_default_str();
    scale->callback([&] { action = [&] { return cmd_scale_check(common, sc, out); }; });

    MsArgs ms;
    auto *msv = app.add_subcommand("ms-verify", "Check the two-MS-gate X-string identity");
    msv->add_option("--n", ms.n, "System sizes, e.g. 1..5 or 2,4")->capture_default_str();
    msv->add_option("--phi", ms.phi, "Angles, e.g. 0.3,pi/2,1.7")->capture_default_str();
    msv->add_flag("--gates", ms.gates, "Print the gate listing for every case");
    msv->callback([&] { action = [&] { return cmd_ms_verify(ms, out); }; });

    CompileArgs co;
    auto *comp = app.add_subcommand("compile", "Compile one RTF slice to MS gates");
    add_instance(comp, common);
    comp->add_option("--j", co.j, "Slice index")->required();
    comp->add_option("--k", co.k, "Slice count")->required();
    comp->add_option("--tau-j", co.tau_j, "Slice duration")->capture_default_str();
    comp->add_flag("--verify", co.verify, "Compare with the dense slice exponential");
    comp->callback([&] { action = [&] { return cmd_compile(common, co, out); }; });

    auto *dump = app.add_subcommand("dump-hamiltonian", "Pauli tables of H_P and H_B");
    add_instance(dump, common);
    dump->callback([&] { action = [&] { return cmd_dump(common, out); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();
    }
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForVersion &) {
        out << kToolVersion << "\n";
        return kSuccess;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kUsageOrRuntimeError;
    }
    try {
        return action();
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kUsageOrRuntimeError;
    }
}

}  // namespace ec3lab::cli
