#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bbqaoa/hamiltonian.hpp"
#include "bbqaoa/protocol.hpp"
#include "bbqaoa/rng.hpp"

namespace bbqaoa {

enum class InitKind { adiabatic, uniform, anti_adiabatic };

// Accepts "adiabatic", "uniform", "anti-adiabatic" (or "anti_adiabatic").
InitKind parse_init_kind(std::string_view name);
std::string to_string(InitKind kind);

// Independent per-block Bernoulli draws: block i (1-indexed) is +1 (E) with
// probability bias(i, N_b) and -1 otherwise.
struct InitDistribution {
    InitKind kind = InitKind::uniform;

    double bias(std::size_t block, std::size_t n_blocks) const;
};

Protocol sample_initial(const InitDistribution& dist, std::size_t n_blocks, double total_time, Rng& rng);

// Sorted block indices toggled together by one update.
using FlipSet = std::vector<std::size_t>;

// Every nonempty subset of {0..n_blocks-1} with at most k elements, ordered by
// size and then lexicographically.
std::vector<FlipSet> enumerate_updates(std::size_t n_blocks, std::size_t k);

struct SDResult {
    Protocol final_protocol;
    double final_objective = 0.0;
    std::size_t accepted_updates = 0;
    std::size_t evaluations = 0;  // candidate evaluations, the start point excluded
    std::vector<double> objective_trajectory;  // start value, then one entry per acceptance
};

// Stochastic Descent SD_k.
//
// Shuffles the full list of <=k-flip updates, scans it in order and takes the
// first candidate whose objective is strictly greater than the current one.
// After every acceptance the list is reshuffled and the scan restarts. A full
// scan without improvement ends the run, so the result is a k-local optimum.
//
// Candidates are evaluated by resuming evolution from a cached prefix state at
// the first flipped block; this performs the same floating-point operations as
// a full evolve() and gives bit-identical objectives.
SDResult stochastic_descent(const Protocol& initial, std::size_t k, const DiagonalHamiltonian& diag, int c_max,
                            Rng& rng);

// True iff no update of at most k flips strictly improves the objective.
// Evaluates every neighbour with a full evolve().
bool is_local_optimum(const Protocol& protocol, std::size_t k, const DiagonalHamiltonian& diag, int c_max);

}  // namespace bbqaoa
