#include "trlp/preprocess.hpp"

#include <string>

#include "trlp/errors.hpp"

namespace trlp {

StandardFormLP ReducedProblem::as_lp(std::string name) const {
  return StandardFormLP{r1, b_r, c_r, std::move(name)};
}

ReducedProblem reduce(const StandardFormLP& lp, double rank_tol) {
  validate(lp);
  PivotedQR f = qr_column_pivoting(lp.a, rank_tol);
  if (f.rank == 0) {
    throw DegenerateProblemError("reduce: constraint matrix of '" + lp.name + "' has rank 0");
  }

  const std::size_t m = lp.num_rows();
  const std::size_t n = lp.num_cols();
  const std::size_t r = f.rank;

  ReducedProblem out;
  out.original_m = m;
  out.rank = r;

  out.r1 = DenseMatrix(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < n; ++j) out.r1(i, j) = f.r(i, j);

  out.q1 = DenseMatrix(m, r);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < r; ++j) out.q1(i, j) = f.q(i, j);

  out.b_r = multiply_transposed(out.q1, lp.b);
  out.c_r.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.c_r[j] = lp.c[f.perm[j]];
  out.perm = std::move(f.perm);
  return out;
}

Iterate recover(const ReducedProblem& rp, const Iterate& z_tilde) {
  const std::size_t n = rp.perm.size();
  if (z_tilde.x.size() != n || z_tilde.s.size() != n || z_tilde.y.size() != rp.rank) {
    throw InvalidArgument("recover: iterate is not dimensioned for the reduced problem");
  }
  Iterate z;
  z.x.resize(n);
  z.s.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    z.x[rp.perm[j]] = z_tilde.x[j];
    z.s[rp.perm[j]] = z_tilde.s[j];
  }
  z.y = multiply(rp.q1, z_tilde.y);
  return z;
}

double lsq_residual_norm(const StandardFormLP& lp, std::span<const double> x) {
  Vector r = multiply(lp.a, x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= lp.b[i];
  return norm2(r);
}

}  // namespace trlp
