#pragma once

// Random instance generation.
//
// Reproducibility matters more than raw speed here, so the sampling
// primitives are spelled out rather than delegated to distribution
// classes whose output is implementation-defined:
//
//   * engine: std::mt19937_64 seeded directly with the given seed
//   * bounded draw: rejection sampling on the top of the 64-bit range,
//     so every value in [0, k) is exactly equally likely
//   * shuffle: Fisher-Yates from the back, one bounded draw per step
//
// s1 is drawn i.i.d. uniformly over the alphabet; s2 is a uniform random
// shuffle of s1's symbols, which guarantees relatedness by construction.

#include <cstdint>
#include <random>
#include <string>

#include "mcsp/core.hpp"

namespace mcsp {

namespace rng {

// Uniform draw from [0, k); unbiased via rejection sampling.  k must be > 0.
std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t k);

// In-place Fisher-Yates shuffle.
void shuffle(std::string& s, std::mt19937_64& gen);

}  // namespace rng

// Throws ValidationError for n < 1, an empty alphabet, or repeated symbols.
Instance generate_instance(int n, const std::string& alphabet, std::uint64_t seed);

// Filename convention for generated instances: rand_<n>_<seed>.txt
std::string instance_filename(int n, std::uint64_t seed);

}  // namespace mcsp
