#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace bbqaoa {

// Seeded random stream with platform-stable draws.
//
// The raw engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The standard distributions and std::shuffle are not, so bounded
// integers, unit reals and shuffles are derived here directly from raw words.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on [0, bound); bound must be positive. Rejection sampling, no bias.
    std::uint64_t below(std::uint64_t bound);

    // True with probability q (q <= 0 never, q >= 1 always).
    bool bernoulli(double q) { return uniform01() < q; }

    // Fisher-Yates, last index first.
    template <typename T>
    void shuffle(std::span<T> items)
    {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

// Child seed for a cell of a seeded grid. Depends only on the arguments, so
// work can be executed in any order or on any thread.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t group, std::uint64_t index);

}  // namespace bbqaoa
