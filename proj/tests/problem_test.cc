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

#include "ec3lab/problem.h"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "ec3lab/errors.h"
#include "oracles.h"

using namespace ec3lab;

TEST(problem, parse_paper_instance) {
    auto inst = parse_instance(R"({"n": 4, "clauses": [[1,2,3],[2,3,4],[1,2,4]]})");
    EXPECT_EQ(inst, paper_instance());
    EXPECT_EQ(inst.num_clauses(), 3u);
}

TEST(problem, parse_minimal_instance) {
    auto inst = parse_instance(R"({"n": 3, "clauses": [[1,2,3]]})");
    EXPECT_EQ(inst.n_bits(), 3);
    EXPECT_EQ(inst.clauses()[0].bits, (std::array<int, 3>{1, 2, 3}));
}

TEST(problem, parse_rejects_repeated_index) {
    try {
        parse_instance(R"({"n": 3, "clauses": [[1,2,3],[1,1,2]]})");
        FAIL() << "expected ValidationError";
    } catch (const ValidationError &e) {
        EXPECT_NE(std::string(e.what()).find("clause #2"), std::string::npos) << e.what();
    }
}

TEST(problem, parse_rejects_out_of_range_and_empty) {
    EXPECT_THROW(parse_instance(R"({"n": 3, "clauses": [[1,2,4]]})"), ValidationError);
    EXPECT_THROW(parse_instance(R"({"n": 3, "clauses": [[0,1,2]]})"), ValidationError);
    EXPECT_THROW(parse_instance(R"({"n": 3, "clauses": []})"), ValidationError);
}

TEST(problem, parse_reports_position_of_syntax_errors) {
    try {
        parse_instance("{\"n\": 3,\n \"clauses\": [[1,2,3],]\n}");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_instance(R"({"n": "4", "clauses": []})"), ParseError);
    EXPECT_THROW(parse_instance(R"({"n": 4, "clauses": [[1,2]]})"), ParseError);
    EXPECT_THROW(parse_instance(R"([1,2,3])"), ParseError);
}

TEST(problem, serialization_round_trips) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; trial++) {
        auto inst = oracle::random_instance(rng, 3 + trial % 6, 1 + trial % 5);
        EXPECT_EQ(parse_instance(serialize_instance(inst)), inst);
    }
}

TEST(problem, assignment_index_convention) {
    auto a = Assignment::from_string("0100");
    EXPECT_EQ(a.to_index(), 4u);
    EXPECT_EQ(Assignment::from_index(4, 4).str(), "0100");
    EXPECT_THROW(Assignment::from_string("01a"), ParseError);
}

TEST(problem, clause_energy_examples) {
    Clause c{{1, 2, 3}};
    EXPECT_EQ(clause_energy(c, Assignment::from_string("0100")), 0);
    EXPECT_EQ(clause_energy(c, Assignment::from_string("0000")), 1);
    EXPECT_EQ(clause_energy(c, Assignment::from_string("1110")), 1);
    EXPECT_EQ(clause_energy(c, Assignment::from_string("1100")), 1);
}

TEST(problem, violated_count_examples) {
    auto inst = paper_instance();
    EXPECT_EQ(violated_count(inst, Assignment::from_string("0100")), 0);
    EXPECT_EQ(violated_count(inst, Assignment::from_string("0000")), 3);
    EXPECT_EQ(violated_count(inst, Assignment::from_string("1111")), 3);
}

TEST(problem, violated_count_matches_clause_sum_property) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; trial++) {
        int n = 3 + trial % 5;
        auto inst = oracle::random_instance(rng, n, 1 + trial % 6);
        for (uint64_t x = 0; x < (uint64_t{1} << n); x++) {
            auto a = Assignment::from_index(n, x);
            int by_clause = 0;
            for (const auto &c : inst.clauses()) {
                by_clause += clause_energy(c, a);
            }
            int v = violated_count(inst, a);
            ASSERT_EQ(v, by_clause);
            ASSERT_EQ(violated_count(inst, x), v);
            ASSERT_GE(v, 0);
            ASSERT_LE(v, static_cast<int>(inst.num_clauses()));
        }
    }
}

TEST(problem, brute_force_paper_instance) {
    auto r = brute_force_solutions(paper_instance());
    EXPECT_EQ(r.min_energy, 0);
    ASSERT_EQ(r.assignments.size(), 1u);
    EXPECT_EQ(r.assignments[0].str(), "0100");
    EXPECT_TRUE(r.satisfiable());
}

TEST(problem, brute_force_single_and_duplicated_clause) {
    for (auto inst : {Ec3Instance(3, {{{1, 2, 3}}}), Ec3Instance(3, {{{1, 2, 3}}, {{1, 2, 3}}})}) {
        auto r = brute_force_solutions(inst);
        EXPECT_EQ(r.min_energy, 0);
        std::vector<std::string> got;
        for (const auto &a : r.assignments) {
            got.push_back(a.str());
        }
        EXPECT_EQ(got, (std::vector<std::string>{"001", "010", "100"}));
    }
}

TEST(problem, brute_force_unsatisfiable_instance) {
    // Every 3-subset of 4 bits: no assignment puts exactly one 1 in each.
    Ec3Instance inst(4, {{{1, 2, 3}}, {{1, 2, 4}}, {{1, 3, 4}}, {{2, 3, 4}}});
    int oracle_min = 99;
    for (int x = 0; x < 16; x++) {
        std::vector<int> z{(x >> 3) & 1, (x >> 2) & 1, (x >> 1) & 1, x & 1};
        oracle_min = std::min(oracle_min, oracle::naive_energy(inst, z));
    }
    auto r = brute_force_solutions(inst);
    EXPECT_FALSE(r.satisfiable());
    EXPECT_EQ(r.min_energy, oracle_min);
}

TEST(problem, brute_force_is_permutation_invariant) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; trial++) {
        auto inst = oracle::random_instance(rng, 6, 4);
        auto clauses = inst.clauses();
        std::shuffle(clauses.begin(), clauses.end(), rng);
        auto a = brute_force_solutions(inst);
        auto b = brute_force_solutions(Ec3Instance(6, clauses));
        EXPECT_EQ(a.min_energy, b.min_energy);
        EXPECT_EQ(a.assignments, b.assignments);
    }
}

TEST(problem, brute_force_refuses_above_cap) {
    Ec3Instance inst(30, {{{1, 2, 3}}});
    EXPECT_THROW(brute_force_solutions(inst), CapExceeded);
    EXPECT_THROW(brute_force_solutions(paper_instance(), 3), CapExceeded);
}

TEST(problem, bit_multiplicities) {
    EXPECT_EQ(paper_instance().bit_multiplicities(), (std::vector<int>{2, 3, 2, 2}));
}
