#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mbg {

using rng_t = std::mt19937_64;

// Splitmix64-style mix; used to derive independent per-stream seeds from a
// master seed so results do not depend on execution order.
uint64_t derive_seed(uint64_t master, uint64_t stream);

// Uniform integer in [0, n), n >= 1. Rejection sampling on the raw 64-bit
// output, so the draw sequence is identical on every platform (unlike
// std::uniform_int_distribution).
uint64_t uniform_below(rng_t& rng, uint64_t n);

// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(rng_t& rng);

// Sorted uniform M-subset of [0, n).
std::vector<int> sample_uniform_subset(int n, int m, rng_t& rng);

// Sorted binomial random subset of [0, n): each element kept independently
// with probability p.
std::vector<int> sample_binomial_subset(int n, double p, rng_t& rng);

}  // namespace mbg
