#include "trlp/newton_step.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trlp/errors.hpp"

namespace trlp {

namespace {

constexpr double kStepTolerance = 1e-8;

}  // namespace

StepDirection newton_direction(const StandardFormLP& lp, const Iterate& z, double sigma_mu) {
  const Residuals res = residuals(lp, z, sigma_mu);
  if (!strictly_positive(z.x) || !strictly_positive(z.s)) {
    throw InteriorViolationError("newton_direction: x and s must be strictly positive");
  }

  const std::size_t m = lp.num_rows();
  const std::size_t n = lp.num_cols();

  // D A^T, row j scaled by sqrt(x_j / s_j).
  DenseMatrix scaled(n, m);
  for (std::size_t j = 0; j < n; ++j) {
    const double d = std::sqrt(z.x[j] / z.s[j]);
    for (std::size_t i = 0; i < m; ++i) scaled(j, i) = d * lp.a(i, j);
  }

  DenseMatrix r;
  try {
    r = thin_qr_r(scaled);
  } catch (const SingularFactorError& e) {
    throw IllConditionedStepError(e.column(), e.what());
  }

  // rhs = -(rp + A S^-1 (X rd - rc))
  Vector t(n);
  for (std::size_t j = 0; j < n; ++j) t[j] = (z.x[j] * res.rd[j] - res.rc[j]) / z.s[j];
  Vector rhs = multiply(lp.a, t);
  for (std::size_t i = 0; i < m; ++i) rhs[i] = -(res.rp[i] + rhs[i]);

  StepDirection d;
  try {
    const Vector w = solve_lower_triangular(r.transpose(), rhs);
    d.dy = solve_upper_triangular(r, w);
  } catch (const SingularSystemError& e) {
    throw IllConditionedStepError(e.index(), e.what());
  }

  d.ds = multiply_transposed(lp.a, d.dy);
  for (std::size_t j = 0; j < n; ++j) d.ds[j] = -res.rd[j] - d.ds[j];

  d.dx.resize(n);
  for (std::size_t j = 0; j < n; ++j) d.dx[j] = -(res.rc[j] + z.x[j] * d.ds[j]) / z.s[j];

  d.linear_residual_inf = newton_system_residual(lp, z, sigma_mu, d);
  const double scale =
      1.0 + std::max({norm_inf(res.rp), norm_inf(res.rd), norm_inf(res.rc)});
  if (!(d.linear_residual_inf <= kStepTolerance * scale)) {
    throw IllConditionedStepError(
        m, "newton_direction: block residual " + std::to_string(d.linear_residual_inf) +
               " exceeds tolerance " + std::to_string(kStepTolerance * scale));
  }
  return d;
}

Iterate apply_scaled_step(const Iterate& z, const StepDirection& d, double alpha) {
  Iterate out = z;
  for (std::size_t j = 0; j < out.x.size(); ++j) out.x[j] += alpha * d.dx[j];
  for (std::size_t i = 0; i < out.y.size(); ++i) out.y[i] += alpha * d.dy[i];
  for (std::size_t j = 0; j < out.s.size(); ++j) out.s[j] += alpha * d.ds[j];
  return out;
}

Iterate apply_step(const Iterate& z, const StepDirection& d, double dt) {
  return apply_scaled_step(z, d, step_factor(dt));
}

double newton_system_residual(const StandardFormLP& lp, const Iterate& z, double sigma_mu,
                              const StepDirection& d) {
  const Residuals res = residuals(lp, z, sigma_mu);
  double worst = 0.0;

  const Vector adx = multiply(lp.a, d.dx);
  for (std::size_t i = 0; i < adx.size(); ++i) worst = std::max(worst, std::abs(adx[i] + res.rp[i]));

  const Vector atdy = multiply_transposed(lp.a, d.dy);
  for (std::size_t j = 0; j < atdy.size(); ++j) {
    worst = std::max(worst, std::abs(atdy[j] + d.ds[j] + res.rd[j]));
    worst = std::max(worst, std::abs(z.s[j] * d.dx[j] + z.x[j] * d.ds[j] + res.rc[j]));
  }
  return worst;
}

}  // namespace trlp
