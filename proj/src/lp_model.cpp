#include "trlp/lp_model.hpp"

#include <algorithm>
#include <cmath>

#include "trlp/errors.hpp"

namespace trlp {

void validate(const StandardFormLP& lp) {
  if (lp.a.rows() == 0 || lp.a.cols() == 0) throw InvalidArgument("LP must have m >= 1 and n >= 1");
  if (lp.b.size() != lp.a.rows()) throw InvalidArgument("LP: length of b differs from rows of A");
  if (lp.c.size() != lp.a.cols()) throw InvalidArgument("LP: length of c differs from cols of A");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(lp.a.data().begin(), lp.a.data().end(), finite) ||
      !std::all_of(lp.b.begin(), lp.b.end(), finite) || !std::all_of(lp.c.begin(), lp.c.end(), finite)) {
    throw InvalidArgument("LP '" + lp.name + "' contains non-finite data");
  }
}

bool strictly_positive(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double e) { return e > 0.0; });
}

namespace {

void check_dimensions(const StandardFormLP& lp, const Iterate& z) {
  if (z.x.size() != lp.num_cols() || z.s.size() != lp.num_cols() || z.y.size() != lp.num_rows()) {
    throw InvalidArgument("iterate dimensions do not match the LP");
  }
  if (lp.b.size() != lp.num_rows() || lp.c.size() != lp.num_cols()) {
    throw InvalidArgument("LP vectors do not match A");
  }
}

Vector primal_residual(const StandardFormLP& lp, const Iterate& z) {
  Vector rp = multiply(lp.a, z.x);
  for (std::size_t i = 0; i < rp.size(); ++i) rp[i] -= lp.b[i];
  return rp;
}

Vector dual_residual(const StandardFormLP& lp, const Iterate& z) {
  Vector rd = multiply_transposed(lp.a, z.y);
  for (std::size_t j = 0; j < rd.size(); ++j) rd[j] += z.s[j] - lp.c[j];
  return rd;
}

}  // namespace

Residuals residuals(const StandardFormLP& lp, const Iterate& z, double sigma_mu) {
  check_dimensions(lp, z);
  Residuals r;
  r.rp = primal_residual(lp, z);
  r.rd = dual_residual(lp, z);

  const std::size_t n = lp.num_cols();
  r.rc.resize(n);
  double complementarity_inf = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double xs = z.x[j] * z.s[j];
    r.rc[j] = xs - sigma_mu;
    complementarity_inf = std::max(complementarity_inf, std::abs(xs));
  }
  r.duality_gap = dot(z.x, z.s);
  r.mu = (norm1(r.rp) + norm1(r.rd) + r.duality_gap) / static_cast<double>(n);
  r.kkt_error_inf = std::max({norm_inf(r.rp), norm_inf(r.rd), complementarity_inf});
  return r;
}

double mu_rule(const StandardFormLP& lp, const Iterate& z) {
  check_dimensions(lp, z);
  return (norm1(primal_residual(lp, z)) + norm1(dual_residual(lp, z)) + dot(z.x, z.s)) /
         static_cast<double>(lp.num_cols());
}

double sigma_rule(double mu) {
  if (!(mu >= 0.0)) throw InvalidArgument("sigma_rule: mu must be non-negative");
  return std::min(0.05, mu);
}

double kkt_error(const StandardFormLP& lp, const Iterate& z) {
  return residuals(lp, z, 0.0).kkt_error_inf;
}

double objective(const StandardFormLP& lp, std::span<const double> x) { return dot(lp.c, x); }

}  // namespace trlp
