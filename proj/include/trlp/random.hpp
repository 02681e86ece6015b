#pragma once

// Seeded random numbers with a fully specified output sequence.
//
// Raw bits come from std::mt19937_64, whose output for a given seed is fixed
// by the C++ standard (and matches MT19937-64 reference implementations in
// other languages). The standard distributions are not portable, so the
// mappings below are done by hand:
//
//   uniform()  = (next_u64() >> 11) * 2^-53                 in [0, 1)
//   normal()   = Box-Muller on u1 = 1 - uniform(), u2 = uniform():
//                sqrt(-2 ln u1) * cos(2 pi u2), then the sin() partner
//                is returned by the following call
//   below(k)   = floor(uniform() * k)
//
// Independent streams for retries use substream_seed(seed, k) =
// seed + k * 0x9E3779B97F4A7C15 (mod 2^64), with k = 0 giving seed itself.

#include <cstdint>
#include <optional>
#include <random>

namespace trlp {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  std::size_t below(std::size_t k);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t k) {
  return seed + k * 0x9E3779B97F4A7C15ULL;
}

}  // namespace trlp
