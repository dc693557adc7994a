#include "bbqaoa/optimizer.hpp"

#include <algorithm>

#include "bbqaoa/errors.hpp"

namespace bbqaoa {

namespace {

// Upper bound on the materialized update list.
constexpr std::size_t kMaxUpdates = std::size_t{1} << 26;

// Evolution with cached prefix states for one current protocol:
// prefix_[j] is the state just before block j is applied.
class PrefixEvaluator {
public:
    PrefixEvaluator(const Protocol& protocol, const DiagonalHamiltonian& diag, int c_max)
        : protocol_(protocol),
          diag_(diag),
          c_max_(static_cast<double>(c_max)),
          dt_(protocol.block_duration()),
          scratch_(uniform_superposition(diag.n_qubits()))
    {
        prefix_.reserve(protocol.n_blocks() + 1);
        prefix_.push_back(uniform_superposition(diag.n_qubits()));
        for (std::size_t j = 0; j < protocol.n_blocks(); ++j) {
            prefix_.push_back(prefix_.back());
            apply_block(prefix_.back(), protocol[j], diag_, dt_);
        }
    }

    const Protocol& protocol() const noexcept { return protocol_; }

    double current_objective() const { return expectation(prefix_.back(), diag_) / c_max_; }

    double evaluate(const FlipSet& flips)
    {
        const std::size_t start = flips.front();
        scratch_ = prefix_[start];
        const auto blocks = protocol_.blocks();
        for (std::size_t j = start; j < blocks.size(); ++j) {
            BlockValue b = blocks[j];
            if (std::binary_search(flips.begin(), flips.end(), j)) {
                b = static_cast<BlockValue>(-b);
            }
            apply_block(scratch_, b, diag_, dt_);
        }
        return expectation(scratch_, diag_) / c_max_;
    }

    void accept(const FlipSet& flips)
    {
        protocol_.flip(flips);
        for (std::size_t j = flips.front(); j < protocol_.n_blocks(); ++j) {
            prefix_[j + 1] = prefix_[j];
            apply_block(prefix_[j + 1], protocol_[j], diag_, dt_);
        }
    }

private:
    Protocol protocol_;
    const DiagonalHamiltonian& diag_;
    double c_max_;
    double dt_;
    std::vector<StateVector> prefix_;
    StateVector scratch_;
};

void check_k(std::size_t n_blocks, std::size_t k)
{
    if (k < 1 || k > n_blocks) {
        throw ArgumentError("flip size k=" + std::to_string(k) + " outside [1, " + std::to_string(n_blocks) + "]");
    }
}

}  // namespace

InitKind parse_init_kind(std::string_view name)
{
    if (name == "adiabatic") {
        return InitKind::adiabatic;
    }
    if (name == "uniform") {
        return InitKind::uniform;
    }
    if (name == "anti-adiabatic" || name == "anti_adiabatic") {
        return InitKind::anti_adiabatic;
    }
    throw ArgumentError("unknown initialization \"" + std::string(name)
                        + "\" (expected adiabatic, uniform or anti-adiabatic)");
}

std::string to_string(InitKind kind)
{
    switch (kind) {
    case InitKind::adiabatic: return "adiabatic";
    case InitKind::uniform: return "uniform";
    case InitKind::anti_adiabatic: return "anti-adiabatic";
    }
    return "unknown";
}

double InitDistribution::bias(std::size_t block, std::size_t n_blocks) const
{
    if (n_blocks == 0 || block < 1 || block > n_blocks) {
        throw ArgumentError("InitDistribution::bias: block " + std::to_string(block) + " outside [1, "
                            + std::to_string(n_blocks) + "]");
    }
    const double ramp = static_cast<double>(block) / static_cast<double>(n_blocks);
    switch (kind) {
    case InitKind::adiabatic: return ramp;
    case InitKind::uniform: return 0.5;
    case InitKind::anti_adiabatic: return 1.0 - ramp;
    }
    return 0.5;
}

Protocol sample_initial(const InitDistribution& dist, std::size_t n_blocks, double total_time, Rng& rng)
{
    if (n_blocks == 0) {
        throw ArgumentError("sample_initial: n_blocks must be positive");
    }
    std::vector<BlockValue> blocks(n_blocks);
    for (std::size_t i = 0; i < n_blocks; ++i) {
        blocks[i] = rng.bernoulli(dist.bias(i + 1, n_blocks)) ? kConstraintBlock : kMixerBlock;
    }
    return Protocol(std::move(blocks), total_time);
}

std::vector<FlipSet> enumerate_updates(std::size_t n_blocks, std::size_t k)
{
    check_k(n_blocks, k);

    // Size check before materializing: sum_{i<=k} C(n, i). Each running
    // binomial is at most kMaxUpdates before the next multiplication.
    std::size_t total = 0;
    std::size_t binom = 1;
    for (std::size_t i = 1; i <= k && total <= kMaxUpdates; ++i) {
        binom = binom * (n_blocks - i + 1) / i;
        total += binom;
    }
    if (total > kMaxUpdates) {
        throw ArgumentError("enumerate_updates: more than " + std::to_string(kMaxUpdates) + " updates for N_b="
                            + std::to_string(n_blocks) + ", k=" + std::to_string(k));
    }

    std::vector<FlipSet> updates;
    updates.reserve(total);
    for (std::size_t size = 1; size <= k; ++size) {
        FlipSet combo(size);
        for (std::size_t i = 0; i < size; ++i) {
            combo[i] = i;
        }
        while (true) {
            updates.push_back(combo);
            // advance to the next combination in lexicographic order
            std::size_t i = size;
            while (i > 0 && combo[i - 1] == n_blocks - size + (i - 1)) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++combo[i - 1];
            for (std::size_t j = i; j < size; ++j) {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    return updates;
}

SDResult stochastic_descent(const Protocol& initial, std::size_t k, const DiagonalHamiltonian& diag, int c_max,
                            Rng& rng)
{
    check_cmax(diag, c_max);
    auto updates = enumerate_updates(initial.n_blocks(), k);

    PrefixEvaluator evaluator(initial, diag, c_max);
    SDResult result{initial, evaluator.current_objective(), 0, 0, {}};
    result.objective_trajectory.push_back(result.final_objective);

    bool improved = true;
    while (improved) {
        improved = false;
        rng.shuffle(std::span<FlipSet>(updates));
        for (const auto& update : updates) {
            const double candidate = evaluator.evaluate(update);
            ++result.evaluations;
            if (candidate > result.final_objective) {
                evaluator.accept(update);
                result.final_objective = candidate;
                result.objective_trajectory.push_back(candidate);
                ++result.accepted_updates;
                improved = true;
                break;
            }
        }
    }
    result.final_protocol = evaluator.protocol();
    return result;
}

bool is_local_optimum(const Protocol& protocol, std::size_t k, const DiagonalHamiltonian& diag, int c_max)
{
    const double current = objective(protocol, diag, c_max);
    for (const auto& update : enumerate_updates(protocol.n_blocks(), k)) {
        if (objective(protocol.flipped(update), diag, c_max) > current) {
            return false;
        }
    }
    return true;
}

}  // namespace bbqaoa
