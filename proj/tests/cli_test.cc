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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

using namespace ec3lab;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "ec3lab");
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / "ec3lab_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string write_file(const std::string &name, const std::string &content) {
    auto p = temp_path(name);
    std::ofstream(p) << content;
    return p.string();
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> csv_column(const std::string &csv, size_t col) {
    std::vector<std::string> values;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string cell;
        for (size_t i = 0; i <= col; i++) {
            std::getline(row, cell, ',');
        }
        values.push_back(cell);
    }
    return values;
}

}  // namespace

TEST(cli, solve_paper_instance) {
    auto r = run_cli({"solve"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "energy=0\n0100\n");
}

TEST(cli, solve_unsatisfiable_reports_minimum) {
    auto path = write_file("unsat.json", R"({"n":4,"clauses":[[1,2,3],[1,2,4],[1,3,4],[2,3,4]]})");
    auto r = run_cli({"solve", "--instance", path});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out.substr(0, 9), "energy=1\n");
}

TEST(cli, solve_rejects_bad_input) {
    auto bad = write_file("bad.json", R"({"n":3,"clauses":[[1,1,2]]})");
    auto r = run_cli({"solve", "--instance", bad});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("clause #1 [1,1,2]"), std::string::npos);
    EXPECT_EQ(run_cli({"solve", "--instance", temp_path("missing.json").string()}).code, 2);
    auto broken = write_file("broken.json", "{\"n\": 4,\n \"clauses\": [[1,2,3]");
    auto b = run_cli({"solve", "--instance", broken});
    EXPECT_EQ(b.code, 2);
    EXPECT_NE(b.err.find("line 2"), std::string::npos);
}

TEST(cli, usage_errors) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"evolve"}).code, 2);
    EXPECT_EQ(run_cli({"evolve", "--T", "40", "--steps", "100", "--signal", "pulse:s=2,delta=0.08"}).code, 2);
    EXPECT_EQ(run_cli({"evolve", "--T", "4", "--signal", "pulse:s=2,delta=0.08,bogus=1"}).code, 2);
    EXPECT_EQ(run_cli({"rtf", "--T", "2", "--k", "4", "--rule", "uniform:lo=3,hi=2"}).code, 2);
    EXPECT_EQ(run_cli({"--version"}).code, 0);
}

TEST(cli, evolve_trace_and_manifest) {
    auto out = temp_path("pulse.csv").string();
    auto r = run_cli({"evolve", "--T", "1", "--steps", "8", "--signal", "pulse:s=2,delta=0.5", "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    std::string csv = read_file(out);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t_over_T,fidelity,coefficient");
    auto coeff = csv_column(csv, 2);
    EXPECT_EQ(coeff, (std::vector<std::string>{"3", "3", "1", "1", "3", "3", "1", "1", "3"}));
    std::string manifest = read_file(out + ".manifest.json");
    EXPECT_NE(manifest.find("\"command\": \"evolve\""), std::string::npos);
    EXPECT_NE(manifest.find("\"tool_version\": \"0.1.0\""), std::string::npos);
    EXPECT_NE(manifest.find("wall_clock_seconds"), std::string::npos);
}

TEST(cli, evolve_is_byte_reproducible) {
    auto a = temp_path("a.csv").string();
    auto b = temp_path("b.csv").string();
    for (auto &p : {a, b}) {
        ASSERT_EQ(run_cli({"evolve", "--T", "3", "--signal", "randhold:lo=0,hi=2,delta=0.1,seed=11", "--out", p}).code, 0);
    }
    EXPECT_EQ(read_file(a), read_file(b));
}

TEST(cli, evolve_cos2_column) {
    auto out = temp_path("cos2.csv").string();
    ASSERT_EQ(run_cli({"evolve", "--T", "2", "--steps", "400", "--signal", "cos2:a=2,w=10", "--record-every", "100",
                       "--out", out}).code,
              0);
    auto t = csv_column(read_file(out), 0);
    auto c = csv_column(read_file(out), 2);
    ASSERT_EQ(t.size(), 5u);
    for (size_t i = 0; i < t.size(); i++) {
        double time = std::stod(t[i]) * 2;
        EXPECT_NEAR(std::stod(c[i]), 1 + 2 * std::pow(std::cos(10 * time), 2), 1e-10);
    }
}

TEST(cli, rtf_seed_determinism) {
    std::vector<std::string> args{"rtf", "--T", "2", "--k", "40", "--rule", "uniform:lo=2,hi=3", "--seed", "9"};
    auto first = run_cli(args);
    ASSERT_EQ(first.code, 0) << first.err;
    EXPECT_EQ(first.out, run_cli(args).out);
    args.back() = "10";
    EXPECT_NE(first.out, run_cli(args).out);
    auto avg = run_cli({"rtf", "--T", "2", "--k", "40", "--rule", "uniform:lo=2,hi=3", "--seeds", "4", "--jobs", "2"});
    EXPECT_NE(avg.out.find("seed_std_error="), std::string::npos);
}

TEST(cli, dump_hamiltonian) {
    auto r = run_cli({"dump-hamiltonian"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, 13), "# H_P\nI 15/8\n");
    EXPECT_NE(r.out.find("\nZ1Z2Z3 3/8\n"), std::string::npos);
    EXPECT_NE(r.out.find("\nZ2 -3/8\n"), std::string::npos);
    EXPECT_NE(r.out.find("# H_B\nI 9/2\n"), std::string::npos);
    EXPECT_NE(r.out.find("\nX2 -3/2\n"), std::string::npos);

    auto one = write_file("one.json", R"({"n":3,"clauses":[[1,2,3]]})");
    auto s = run_cli({"dump-hamiltonian", "--instance", one});
    std::string hp = s.out.substr(0, s.out.find("# H_B"));
    EXPECT_EQ(std::count(hp.begin(), hp.end(), '\n'), 9);
}

TEST(cli, ms_verify_and_compile) {
    auto r = run_cli({"ms-verify", "--n", "1..5", "--phi", "0.3,pi/2,1.7"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 16);
    auto g = run_cli({"ms-verify", "--n", "2", "--phi", "0.5", "--gates"});
    EXPECT_NE(g.out.find("MS theta="), std::string::npos);
    auto c = run_cli({"compile", "--j", "5", "--k", "10", "--tau-j", "0.05", "--verify"});
    EXPECT_EQ(c.code, 0) << c.err;
    EXPECT_NE(c.out.find("deviation_from_dense_slice="), std::string::npos);
    EXPECT_EQ(run_cli({"compile", "--j", "11", "--k", "10"}).code, 2);
}

TEST(cli, scale_check) {
    auto r = run_cli({"scale-check", "--J", "1", "--T0", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("max_deviation=0\n"), std::string::npos);
}

TEST(cli, sweep_fixed_runtime_and_threshold) {
    auto fixed = run_cli({"sweep", "--strengths", "0,2", "--T", "10"});
    ASSERT_EQ(fixed.code, 0) << fixed.err;
    auto f = csv_column(fixed.out, 1);
    ASSERT_EQ(f.size(), 2u);
    EXPECT_GT(std::stod(f[1]), std::stod(f[0]));

    auto unreachable = run_cli({"sweep", "--threshold", "0.999", "--strengths", "0", "--t-max", "20"});
    EXPECT_EQ(unreachable.code, 1);
    EXPECT_NE(unreachable.out.find("0,nan,unreachable,"), std::string::npos);

    auto found = run_cli({"sweep", "--threshold", "0.9", "--strengths", "5", "--t-max", "60"});
    EXPECT_EQ(found.code, 0) << found.err;
    EXPECT_NE(found.out.find(",found,"), std::string::npos);
    EXPECT_EQ(run_cli({"sweep", "--strengths", "1"}).code, 2);
}
