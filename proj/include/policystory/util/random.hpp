#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace policystory {

// Unbiased draw in [0, bound) by rejection. Used instead of
// std::uniform_int_distribution, whose sequence differs between standard
// libraries, because committed golden outputs depend on the exact draws.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// k distinct indices out of [0, n) (k clamped to n), in ascending order.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::mt19937_64& rng);

}  // namespace policystory
