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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ec3lab {

/// Three distinct 1-based bit indices. Satisfied iff exactly one addressed bit is 1.
struct Clause {
    std::array<int, 3> bits;

    bool operator==(const Clause &) const = default;
};

/// An n-bit exact-cover-3 instance: a conjunction of M >= 1 clauses.
class Ec3Instance {
   public:
    /// Throws ValidationError if an index is outside [1, n_bits], a clause
    /// repeats an index, or there are no clauses. Repeated clauses are allowed.
    Ec3Instance(int n_bits, std::vector<Clause> clauses);

    int n_bits() const {
        return n_bits_;
    }
    const std::vector<Clause> &clauses() const {
        return clauses_;
    }
    size_t num_clauses() const {
        return clauses_.size();
    }

    /// Number of clauses each bit takes part in; entry i is bit i+1.
    std::vector<int> bit_multiplicities() const;

    bool operator==(const Ec3Instance &) const = default;

   private:
    int n_bits_;
    std::vector<Clause> clauses_;
};

/// The 4-bit instance with clauses {1,2,3}, {2,3,4}, {1,2,4}. Unique solution 0100.
Ec3Instance paper_instance();

/// Bit values z_1..z_n. Bit 1 is the leftmost character and the most
/// significant bit of the basis-state index, so "0100" is index 4.
struct Assignment {
    std::vector<uint8_t> bits;

    static Assignment from_index(int n_bits, uint64_t index);
    static Assignment from_string(std::string_view text);
    uint64_t to_index() const;
    std::string str() const;

    bool operator==(const Assignment &) const = default;
};

int clause_energy(const Clause &clause, const Assignment &a);

/// Violated-clause count, i.e. the diagonal of the problem Hamiltonian at |a>.
int violated_count(const Ec3Instance &inst, const Assignment &a);

/// Same as violated_count but addressed by basis-state index.
int violated_count(const Ec3Instance &inst, uint64_t index);

inline constexpr int kBruteForceBitCap = 24;

struct SolveResult {
    int min_energy;
    /// Every minimizing assignment, in increasing basis-index order.
    std::vector<Assignment> assignments;

    bool satisfiable() const {
        return min_energy == 0;
    }
};

/// Exhaustive enumeration of all 2^n assignments. Throws CapExceeded above `cap` bits.
SolveResult brute_force_solutions(const Ec3Instance &inst, int cap = kBruteForceBitCap);

/// Parses a JSON instance document: {"n": <int>, "clauses": [[i, j, k], ...]}.
/// Throws ParseError (with line and column) for malformed text and
/// ValidationError (naming the clause) for invariant violations.
Ec3Instance parse_instance(std::string_view text);

/// Canonical serialization; round-trips through parse_instance.
std::string serialize_instance(const Ec3Instance &inst);

/// Loads an instance from a file path, or the built-in instance for "@paper".
Ec3Instance load_instance(const std::string &path_or_builtin);

}  // namespace ec3lab
