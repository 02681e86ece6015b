#pragma once

#include <cstdint>

#include "trlp/lp_model.hpp"

namespace trlp {

struct GeneratedProblem {
  StandardFormLP lp;
  Iterate certificate;  // optimal (x, y, s) by construction
  std::uint64_t seed = 0;
  std::size_t attempts = 1;

  double certificate_objective() const { return objective(lp, certificate.x); }
};

// Random feasible standard-form LP with a known optimal primal-dual pair.
//
// A is m x n with each entry nonzero with probability `density` and standard
// normal when nonzero (row-major draw order). x has ceil(n/2) entries uniform
// on [0, 1) on a random support, s is uniform on the complementary support,
// y is uniform on [-2, 2), and b = A x, c = A^T y + s. Because x and s have
// disjoint supports the pair is complementary, hence optimal.
//
// If A comes out rank-deficient at the default rank tolerance the draw is
// repeated on substream_seed(seed, k), k = 1..9; after 10 failed attempts
// InvalidArgument is thrown.
GeneratedProblem random_full_rank(std::size_t m, std::size_t n, double density, std::uint64_t seed);

inline constexpr double kDefaultDensity = 0.2;

// Appends `extra_rows` rows, each a combination of all existing rows with
// coefficients uniform on [-1, 1); b is combined with the same weights, so
// the system stays consistent and the rank is unchanged.
StandardFormLP make_rank_deficient(const StandardFormLP& lp, std::size_t extra_rows, std::uint64_t seed);

}  // namespace trlp
