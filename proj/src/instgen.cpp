#include "mcsp/instgen.hpp"

#include <algorithm>
#include <limits>

namespace mcsp {

namespace rng {

std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t k) {
  // Reject draws from the incomplete final copy of [0, k) at the top of
  // the 64-bit range.  bound is the largest multiple of k representable,
  // computed without 128-bit arithmetic.
  const std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % k + 1) % k;
  const std::uint64_t bound = 0 - rem;  // 2^64 - rem, wraps to 0 when rem == 0
  for (;;) {
    std::uint64_t r = gen();
    if (bound == 0 || r < bound) return r % k;
  }
}

void shuffle(std::string& s, std::mt19937_64& gen) {
  for (std::size_t i = s.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(bounded(gen, i));
    std::swap(s[i - 1], s[j]);
  }
}

}  // namespace rng

Instance generate_instance(int n, const std::string& alphabet, std::uint64_t seed) {
  if (n < 1)
    throw ValidationError("instance length must be >= 1, got " + std::to_string(n));
  if (alphabet.empty()) throw ValidationError("alphabet must be non-empty");
  std::string sorted = alphabet;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ValidationError("alphabet symbols must be distinct: " + alphabet);

  std::mt19937_64 gen(seed);
  std::string s1(static_cast<std::size_t>(n), '\0');
  for (char& c : s1)
    c = alphabet[static_cast<std::size_t>(rng::bounded(gen, alphabet.size()))];
  std::string s2 = s1;
  rng::shuffle(s2, gen);
  return Instance(std::move(s1), std::move(s2));
}

std::string instance_filename(int n, std::uint64_t seed) {
  return "rand_" + std::to_string(n) + "_" + std::to_string(seed) + ".txt";
}

}  // namespace mcsp
