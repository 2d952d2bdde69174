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

#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commands.h"
#include "ec3lab/errors.h"
#include "ec3lab/evolve.h"
#include "ec3lab/hamiltonian.h"
#include "ec3lab/msgates.h"
#include "ec3lab/problem.h"
#include "ec3lab/signals.h"

namespace py = pybind11;
using namespace ec3lab;

namespace {

Ec3Instance make_instance(int n, const std::vector<std::array<int, 3>> &clauses) {
    std::vector<Clause> cs;
    cs.reserve(clauses.size());
    for (const auto &c : clauses) {
        cs.push_back(Clause{c});
    }
    return Ec3Instance(n, std::move(cs));
}

std::map<std::string, double> pauli_dict(const PauliSum &sum) {
    std::map<std::string, double> out;
    for (const auto &t : sum.terms()) {
        out[t.label()] = t.coefficient;
    }
    return out;
}

py::dict trace_dict(const FidelityTrace &trace) {
    std::vector<double> t, f, c;
    for (const auto &row : trace.rows) {
        t.push_back(row.t_over_T);
        f.push_back(row.fidelity);
        c.push_back(row.coefficient);
    }
    py::dict d;
    d["t_over_T"] = t;
    d["fidelity"] = f;
    d["coefficient"] = c;
    d["final_fidelity"] = trace.final_fidelity;
    d["final_state"] = trace.final_state;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Adiabatic exact-cover-3 simulation core";

    static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const ParseError &e) {
            py::set_error(parse_error, e.what());
        } catch (const CapExceeded &e) {
            py::set_error(PyExc_OverflowError, e.what());
        }
    });

    py::class_<Ec3Instance>(m, "Instance")
        .def(py::init(&make_instance), py::arg("n"), py::arg("clauses"))
        .def_property_readonly("n", &Ec3Instance::n_bits)
        .def_property_readonly("clauses",
                               [](const Ec3Instance &inst) {
                                   std::vector<std::array<int, 3>> out;
                                   for (const auto &c : inst.clauses()) {
                                       out.push_back(c.bits);
                                   }
                                   return out;
                               })
        .def("violated", [](const Ec3Instance &inst, const std::string &bits) {
            return violated_count(inst, Assignment::from_string(bits));
        })
        .def("to_json", &serialize_instance)
        .def("__repr__", [](const Ec3Instance &inst) {
            std::string s = serialize_instance(inst);
            return "Instance(" + s.substr(0, s.size() - 1) + ")";
        });

    m.def("paper_instance", &paper_instance, "The built-in 4-bit instance.");
    m.def("parse_instance", [](const std::string &text) { return parse_instance(text); }, py::arg("text"));

    m.def(
        "brute_force",
        [](const Ec3Instance &inst) {
            auto r = brute_force_solutions(inst);
            std::vector<std::string> bits;
            for (const auto &a : r.assignments) {
                bits.push_back(a.str());
            }
            return py::make_tuple(r.min_energy, bits);
        },
        py::arg("instance"), "Returns (min_energy, minimizing bit strings).");

    m.def("hp_pauli", [](const Ec3Instance &inst) { return pauli_dict(hp_to_pauli(inst)); }, py::arg("instance"));
    m.def("hb_pauli", [](const Ec3Instance &inst) { return pauli_dict(build_hb(inst)); }, py::arg("instance"));

    m.def(
        "evolve",
        [](const Ec3Instance &inst, double T, int64_t steps, const std::string &signal, const std::string &backend,
           int64_t record_every) {
            ScheduleConfig cfg;
            cfg.total_time = T;
            cfg.signal = parse_signal(signal);
            cfg.backend = parse_backend(backend);
            cfg.steps = steps > 0 ? steps : default_steps(T, cfg.signal);
            cfg.record_every = record_every;
            FidelityTrace trace;
            {
                py::gil_scoped_release release;
                trace = propagate(inst, cfg);
            }
            return trace_dict(trace);
        },
        py::arg("instance"), py::arg("T"), py::arg("steps") = 0, py::arg("signal") = "zero",
        py::arg("backend") = "dense_midpoint", py::arg("record_every") = 1);

    m.def(
        "rtf",
        [](const Ec3Instance &inst, double T, int64_t k, const std::string &rule, uint64_t seed, int64_t record_every) {
            auto sched = parse_rtf_rule(rule).schedule(T, k, seed);
            FidelityTrace trace;
            {
                py::gil_scoped_release release;
                trace = rtf_run(inst, sched, record_every);
            }
            return trace_dict(trace);
        },
        py::arg("instance"), py::arg("T"), py::arg("k"), py::arg("rule") = "fixed", py::arg("seed") = 0,
        py::arg("record_every") = 1);

    m.def(
        "rtf_seed_average",
        [](const Ec3Instance &inst, double T, int64_t k, const std::string &rule, std::vector<uint64_t> seeds,
           unsigned jobs) {
            auto parsed = parse_rtf_rule(rule);
            EnsembleStats s;
            {
                py::gil_scoped_release release;
                s = rtf_seed_average(inst, parsed, T, k, seeds, jobs);
            }
            return py::make_tuple(s.mean, s.std_error, s.values);
        },
        py::arg("instance"), py::arg("T"), py::arg("k"), py::arg("rule"), py::arg("seeds"), py::arg("jobs") = 0,
        "Returns (mean, standard error, per-seed values).");

    m.def(
        "final_fidelity",
        [](const Ec3Instance &inst, const std::string &signal, double T, double steps_per_unit) {
            auto sig = parse_signal(signal);
            py::gil_scoped_release release;
            return final_fidelity(inst, sig, T, steps_per_unit);
        },
        py::arg("instance"), py::arg("signal"), py::arg("T"), py::arg("steps_per_unit") = 0.0);

    m.def(
        "min_runtime",
        [](const Ec3Instance &inst, const std::string &signal, double threshold, double t_min, double t_max,
           unsigned jobs) {
            ThresholdOptions opts;
            opts.t_min = t_min;
            opts.t_max = t_max;
            opts.jobs = jobs;
            auto sig = parse_signal(signal);
            ThresholdResult r;
            {
                py::gil_scoped_release release;
                r = min_runtime_for_threshold(inst, sig, threshold, opts);
            }
            py::dict d;
            d["found"] = r.found;
            d["t_star"] = r.found ? py::cast(r.t_star) : py::none();
            d["best_T"] = r.best_T;
            d["best_F"] = r.best_F;
            return d;
        },
        py::arg("instance"), py::arg("signal"), py::arg("threshold") = 0.999, py::arg("t_min") = 1.0,
        py::arg("t_max") = 400.0, py::arg("jobs") = 0);

    m.def(
        "scale_check",
        [](const Ec3Instance &inst, double J, double T0, int64_t steps) {
            ScaleCheckResult r;
            {
                py::gil_scoped_release release;
                r = scale_check(inst, J, T0, steps);
            }
            py::dict d;
            d["max_deviation"] = r.max_deviation;
            d["reference_final_fidelity"] = r.reference_final_fidelity;
            d["scaled_final_fidelity"] = r.scaled_final_fidelity;
            return d;
        },
        py::arg("instance"), py::arg("J"), py::arg("T0"), py::arg("steps"));

    m.def("slice_equivalence", &slice_equivalence_check, py::arg("instance"), py::arg("j"), py::arg("k"),
          py::arg("c"), py::arg("tau"));

    m.def(
        "verify_ms_identity",
        [](double phi, int n) {
            auto d = verify_ms_identity(phi, n);
            return py::make_tuple(d.global, d.subspace);
        },
        py::arg("phi"), py::arg("n"), "Returns (global deviation, ancilla-|0> block deviation).");

    m.def(
        "compile_slice",
        [](const Ec3Instance &inst, int64_t j, int64_t k, double tau_j) {
            auto seq = compile_slice(inst, j, k, tau_j);
            Matrix block = ancilla_zero_block(seq.unitary(), inst.n_bits());
            return py::make_tuple(seq.listing(), block, rtf_slice_operator(inst, j, k, tau_j));
        },
        py::arg("instance"), py::arg("j"), py::arg("k"), py::arg("tau_j"),
        "Returns (gate listing, compiled ancilla-|0> block, dense slice exponential).");

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "ec3lab");
            std::ostringstream out, err;
            int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line tool in-process; returns (exit code, stdout, stderr).");
}
