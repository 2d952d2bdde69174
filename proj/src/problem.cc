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
#include <fstream>
#include <sstream>

#include "ec3lab/errors.h"
#include "json.hpp"

namespace ec3lab {

namespace {

std::string clause_label(size_t index, const Clause &c) {
    std::ostringstream out;
    out << "clause #" << (index + 1) << " [" << c.bits[0] << "," << c.bits[1] << "," << c.bits[2] << "]";
    return out.str();
}

std::pair<size_t, size_t> line_and_column(std::string_view text, size_t byte) {
    size_t line = 1;
    size_t col = 1;
    for (size_t i = 0; i < std::min(byte, text.size()); i++) {
        if (text[i] == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
    }
    return {line, col};
}

}  // namespace

Ec3Instance::Ec3Instance(int n_bits, std::vector<Clause> clauses) : n_bits_(n_bits), clauses_(std::move(clauses)) {
    if (n_bits_ < 1) {
        throw ValidationError("instance must have at least one bit, got n=" + std::to_string(n_bits_));
    }
    if (n_bits_ > 62) {
        throw ValidationError("instance bit count " + std::to_string(n_bits_) + " exceeds 62");
    }
    if (clauses_.empty()) {
        throw ValidationError("instance must have at least one clause");
    }
    for (size_t ci = 0; ci < clauses_.size(); ci++) {
        const auto &c = clauses_[ci];
        for (int b : c.bits) {
            if (b < 1 || b > n_bits_) {
                throw ValidationError(
                    clause_label(ci, c) + ": index " + std::to_string(b) + " outside [1, " + std::to_string(n_bits_) +
                    "]");
            }
        }
        if (c.bits[0] == c.bits[1] || c.bits[0] == c.bits[2] || c.bits[1] == c.bits[2]) {
            throw ValidationError(clause_label(ci, c) + ": repeated bit index within a clause");
        }
    }
}

std::vector<int> Ec3Instance::bit_multiplicities() const {
    std::vector<int> w(n_bits_, 0);
    for (const auto &c : clauses_) {
        for (int b : c.bits) {
            w[b - 1]++;
        }
    }
    return w;
}

Ec3Instance paper_instance() {
    return Ec3Instance(4, {{{1, 2, 3}}, {{2, 3, 4}}, {{1, 2, 4}}});
}

Assignment Assignment::from_index(int n_bits, uint64_t index) {
    Assignment a;
    a.bits.resize(n_bits);
    for (int i = 0; i < n_bits; i++) {
        a.bits[i] = (index >> (n_bits - 1 - i)) & 1;
    }
    return a;
}

Assignment Assignment::from_string(std::string_view text) {
    Assignment a;
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw ParseError("assignment must be a string of 0/1 characters");
        }
        a.bits.push_back(c == '1');
    }
    return a;
}

uint64_t Assignment::to_index() const {
    uint64_t index = 0;
    for (uint8_t b : bits) {
        index = (index << 1) | b;
    }
    return index;
}

std::string Assignment::str() const {
    std::string s;
    for (uint8_t b : bits) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

int clause_energy(const Clause &clause, const Assignment &a) {
    int ones = a.bits[clause.bits[0] - 1] + a.bits[clause.bits[1] - 1] + a.bits[clause.bits[2] - 1];
    return ones == 1 ? 0 : 1;
}

int violated_count(const Ec3Instance &inst, const Assignment &a) {
    int total = 0;
    for (const auto &c : inst.clauses()) {
        total += clause_energy(c, a);
    }
    return total;
}

int violated_count(const Ec3Instance &inst, uint64_t index) {
    const int n = inst.n_bits();
    int total = 0;
    for (const auto &c : inst.clauses()) {
        int ones = 0;
        for (int b : c.bits) {
            ones += (index >> (n - b)) & 1;
        }
        total += ones == 1 ? 0 : 1;
    }
    return total;
}

SolveResult brute_force_solutions(const Ec3Instance &inst, int cap) {
    if (inst.n_bits() > cap) {
        throw CapExceeded(
            "brute-force enumeration refused: " + std::to_string(inst.n_bits()) + " bits exceeds the cap of " +
            std::to_string(cap));
    }
    SolveResult result{static_cast<int>(inst.num_clauses()) + 1, {}};
    const uint64_t count = uint64_t{1} << inst.n_bits();
    std::vector<uint64_t> best;
    for (uint64_t x = 0; x < count; x++) {
        int e = violated_count(inst, x);
        if (e < result.min_energy) {
            result.min_energy = e;
            best.clear();
        }
        if (e == result.min_energy) {
            best.push_back(x);
        }
    }
    for (uint64_t x : best) {
        result.assignments.push_back(Assignment::from_index(inst.n_bits(), x));
    }
    return result;
}

Ec3Instance parse_instance(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        auto [line, col] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(
            "instance document: syntax error at line " + std::to_string(line) + ", column " + std::to_string(col));
    }
    if (!doc.is_object()) {
        throw ParseError("instance document: top level must be an object with fields 'n' and 'clauses'");
    }
    if (!doc.contains("n") || !doc["n"].is_number_integer()) {
        throw ParseError("instance document: field 'n' must be an integer");
    }
    if (!doc.contains("clauses") || !doc["clauses"].is_array()) {
        throw ParseError("instance document: field 'clauses' must be an array");
    }
    std::vector<Clause> clauses;
    const auto &arr = doc["clauses"];
    for (size_t ci = 0; ci < arr.size(); ci++) {
        const auto &c = arr[ci];
        if (!c.is_array() || c.size() != 3) {
            throw ParseError("instance document: clause #" + std::to_string(ci + 1) + " must be a 3-element array");
        }
        Clause clause{};
        for (size_t k = 0; k < 3; k++) {
            if (!c[k].is_number_integer()) {
                throw ParseError("instance document: clause #" + std::to_string(ci + 1) + " has a non-integer index");
            }
            clause.bits[k] = c[k].get<int>();
        }
        clauses.push_back(clause);
    }
    return Ec3Instance(doc["n"].get<int>(), std::move(clauses));
}

std::string serialize_instance(const Ec3Instance &inst) {
    std::ostringstream out;
    out << "{\"n\": " << inst.n_bits() << ", \"clauses\": [";
    for (size_t i = 0; i < inst.clauses().size(); i++) {
        const auto &b = inst.clauses()[i].bits;
        out << (i ? ", " : "") << "[" << b[0] << ", " << b[1] << ", " << b[2] << "]";
    }
    out << "]}\n";
    return out.str();
}

Ec3Instance load_instance(const std::string &path_or_builtin) {
    if (path_or_builtin == "@paper") {
        return paper_instance();
    }
    std::ifstream in(path_or_builtin);
    if (!in) {
        throw ParseError("cannot open instance file '" + path_or_builtin + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

}  // namespace ec3lab
