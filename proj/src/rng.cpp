#include "bbqaoa/rng.hpp"

#include <limits>

#include "bbqaoa/errors.hpp"

namespace bbqaoa {

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound == 0) {
        throw ArgumentError("Rng::below: bound must be positive");
    }
    // Largest multiple of bound that fits; draws at or above it are rejected.
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return x % bound;
}

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t group, std::uint64_t index)
{
    return mix64(mix64(mix64(master) ^ group) ^ index);
}

}  // namespace bbqaoa
