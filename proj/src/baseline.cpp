#include "trlp/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trlp/errors.hpp"
#include "trlp/newton_step.hpp"

namespace trlp {

void validate(const BaselineConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw InvalidArgument("BaselineConfig: epsilon must be positive");
  if (cfg.maxit < 1) throw InvalidArgument("BaselineConfig: maxit must be at least 1");
  if (!(cfg.sigma > 0.0 && cfg.sigma < 1.0)) throw InvalidArgument("BaselineConfig: sigma must lie in (0, 1)");
  if (!(cfg.boundary_fraction > 0.0 && cfg.boundary_fraction < 1.0)) {
    throw InvalidArgument("BaselineConfig: boundary_fraction must lie in (0, 1)");
  }
  if (!(cfg.big_m_factor > 0.0)) throw InvalidArgument("BaselineConfig: big_m_factor must be positive");
}

double max_positive_step(std::span<const double> v, std::span<const double> dv) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (dv[i] < 0.0) alpha = std::min(alpha, -v[i] / dv[i]);
  }
  return alpha;
}

SolveReport solve_baseline(const StandardFormLP& lp, const BaselineConfig& cfg) {
  const auto clock_start = std::chrono::steady_clock::now();
  validate(lp);
  validate(cfg);

  SolveReport report;
  // Rank is diagnostic only; the iteration itself never sees it.
  report.rank = qr_column_pivoting(lp.a).rank;
  report.status = SolveStatus::max_iterations;

  const double n = static_cast<double>(lp.num_cols());
  Iterate z = big_m_start(lp, cfg.big_m_factor);

  for (std::size_t it = 0;; ++it) {
    const Residuals r = residuals(lp, z, 0.0);
    if (r.kkt_error_inf < cfg.epsilon) {
      report.status = SolveStatus::converged;
      break;
    }
    if (it == cfg.maxit) break;

    const double mu = r.duality_gap / n;
    StepDirection d;
    try {
      d = newton_direction(lp, z, cfg.sigma * mu);
    } catch (const IllConditionedStepError& e) {
      report.status = SolveStatus::numerical_failure;
      report.message = e.what();
      break;
    } catch (const InteriorViolationError& e) {
      report.status = SolveStatus::numerical_failure;
      report.message = e.what();
      break;
    }

    const double to_boundary = std::min(max_positive_step(z.x, d.dx), max_positive_step(z.s, d.ds));
    const double alpha = std::min(1.0, cfg.boundary_fraction * to_boundary);
    Iterate next = apply_scaled_step(z, d, alpha);
    if (!strictly_positive(next.x) || !strictly_positive(next.s)) {
      report.status = SolveStatus::numerical_failure;
      report.message = "baseline step left the positive orthant";
      break;
    }

    report.trace.push_back(TraceRecord{mu, cfg.sigma, 0.0, alpha, std::numeric_limits<double>::quiet_NaN(),
                                       r.kkt_error_inf, true,
                                       mu > 0.0 ? *std::min_element(r.rc.begin(), r.rc.end()) / mu : 0.0,
                                       to_boundary, r.duality_gap});
    z = std::move(next);
    ++report.successful_iterations;
    ++report.trial_steps;
  }

  report.z = std::move(z);
  const Residuals final_res = residuals(lp, report.z, 0.0);
  report.kkt_error_inf = final_res.kkt_error_inf;
  report.reduced_resk = final_res.kkt_error_inf;
  report.duality_gap = final_res.duality_gap;
  report.objective = objective(lp, report.z.x);
  report.elapsed = std::chrono::steady_clock::now() - clock_start;
  return report;
}

}  // namespace trlp
