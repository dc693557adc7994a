#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bbqaoa/hamiltonian.hpp"
#include "bbqaoa/rng.hpp"

namespace bbqaoa {

// Two-literal disjunction (l_a OR l_b). A negated literal reads NOT x.
// Canonical form: var_a < var_b; construction swaps the literals if needed
// and rejects var_a == var_b.
class Clause {
public:
    Clause(int var_a, bool neg_a, int var_b, bool neg_b);

    int var_a() const noexcept { return var_a_; }
    bool neg_a() const noexcept { return neg_a_; }
    int var_b() const noexcept { return var_b_; }
    bool neg_b() const noexcept { return neg_b_; }

    friend auto operator<=>(const Clause&, const Clause&) = default;

private:
    int var_a_;
    bool neg_a_;
    int var_b_;
    bool neg_b_;
};

// False only on the unique assignment that falsifies both literals.
// Throws ArgumentError if the assignment is too short for the clause.
bool clause_satisfied(const Clause& clause, std::span<const std::uint8_t> assignment);

// Assignment encoded by a basis index (variable 0 is the most significant bit).
std::vector<std::uint8_t> decode_assignment(std::uint64_t index, int n_vars);

// Number of distinct canonical clauses over n variables: 4 * C(n, 2).
std::uint64_t distinct_clause_count(int n_vars);

// A MAX-2-SAT instance. Clause order is kept as given; equality compares the
// clause sets, since a CNF does not depend on the order of its clauses.
class ProblemInstance {
public:
    ProblemInstance(int n_vars, std::vector<Clause> clauses);

    int n_vars() const noexcept { return n_vars_; }
    std::span<const Clause> clauses() const noexcept { return clauses_; }
    std::size_t size() const noexcept { return clauses_.size(); }

    // Clauses in sorted canonical order.
    std::vector<Clause> sorted_clauses() const;

    friend bool operator==(const ProblemInstance& lhs, const ProblemInstance& rhs);

private:
    int n_vars_;
    std::vector<Clause> clauses_;
};

// Satisfied-clause count for every basis index.
DiagonalHamiltonian build_diagonal(const ProblemInstance& instance);

// Maximum satisfiable clause count by exhaustive scan over 2^n assignments.
int brute_force_cmax(const ProblemInstance& instance);

// n_clauses distinct clauses: each clause draws two distinct variables
// uniformly and a negation flag per literal; a clause that duplicates an
// earlier one is redrawn.
ProblemInstance random_instance(int n_vars, int n_clauses, Rng& rng);

// Instance document (JSON):
//   {"n_vars": 10, "clauses": [[var_a, neg_a, var_b, neg_b], ...]}
// Indices are 0-based, negation flags 0/1.
ProblemInstance parse_instance(std::string_view text);

// Canonical serialization: clauses sorted, one per line, trailing newline.
std::string serialize_instance(const ProblemInstance& instance);

ProblemInstance load_instance(const std::string& path);
void save_instance(const ProblemInstance& instance, const std::string& path);

// FNV-1a 64-bit digest, rendered as 16 lowercase hex digits.
std::string checksum_hex(std::string_view bytes);

}  // namespace bbqaoa
