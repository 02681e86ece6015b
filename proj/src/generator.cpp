#include "trlp/generator.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "trlp/errors.hpp"
#include "trlp/random.hpp"

namespace trlp {

namespace {

constexpr std::size_t kMaxAttempts = 10;

GeneratedProblem draw_instance(std::size_t m, std::size_t n, double density, std::uint64_t seed) {
  Rng rng(seed);

  DenseMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rng.uniform() < density) a(i, j) = rng.normal();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);

  const std::size_t support = (n + 1) / 2;
  Vector x(n, 0.0);
  Vector s(n, 0.0);
  for (std::size_t k = 0; k < support; ++k) x[order[k]] = rng.uniform();
  for (std::size_t k = support; k < n; ++k) s[order[k]] = rng.uniform();

  Vector y(m);
  for (double& v : y) v = (rng.uniform() - 0.5) * 4.0;

  Vector b = multiply(a, x);
  Vector c = multiply_transposed(a, y);
  for (std::size_t j = 0; j < n; ++j) c[j] += s[j];

  GeneratedProblem out;
  out.lp = StandardFormLP{std::move(a), std::move(b), std::move(c),
                          "rand_m" + std::to_string(m) + "_n" + std::to_string(n) + "_s" +
                              std::to_string(seed)};
  out.certificate = Iterate{std::move(x), std::move(y), std::move(s)};
  out.seed = seed;
  return out;
}

}  // namespace

GeneratedProblem random_full_rank(std::size_t m, std::size_t n, double density, std::uint64_t seed) {
  if (m < 1 || n < 2) throw InvalidArgument("random_full_rank: need m >= 1 and n >= 2");
  if (!(density > 0.0 && density <= 1.0)) throw InvalidArgument("random_full_rank: density must lie in (0, 1]");

  for (std::size_t k = 0; k < kMaxAttempts; ++k) {
    GeneratedProblem g = draw_instance(m, n, density, substream_seed(seed, k));
    if (qr_column_pivoting(g.lp.a).rank == m) {
      g.seed = seed;
      g.attempts = k + 1;
      g.lp.name = "rand_m" + std::to_string(m) + "_n" + std::to_string(n) + "_s" + std::to_string(seed);
      return g;
    }
  }
  throw InvalidArgument("random_full_rank: no full-row-rank matrix after 10 attempts (m=" +
                        std::to_string(m) + ", n=" + std::to_string(n) + ")");
}

StandardFormLP make_rank_deficient(const StandardFormLP& lp, std::size_t extra_rows, std::uint64_t seed) {
  validate(lp);
  if (extra_rows < 1) throw InvalidArgument("make_rank_deficient: extra_rows must be at least 1");

  const std::size_t m = lp.num_rows();
  const std::size_t n = lp.num_cols();
  Rng rng(seed);

  DenseMatrix a(m + extra_rows, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = lp.a(i, j);
  Vector b = lp.b;
  b.resize(m + extra_rows, 0.0);

  Vector weights(m);
  for (std::size_t k = 0; k < extra_rows; ++k) {
    bool any_nonzero = false;
    while (!any_nonzero) {
      for (double& w : weights) {
        w = rng.uniform(-1.0, 1.0);
        any_nonzero = any_nonzero || w != 0.0;
      }
    }
    const std::size_t row = m + k;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(row, j) += weights[i] * lp.a(i, j);
      b[row] += weights[i] * lp.b[i];
    }
  }

  return StandardFormLP{std::move(a), std::move(b), lp.c, lp.name + "_rd" + std::to_string(extra_rows)};
}

}  // namespace trlp
