#include "trlp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trlp/errors.hpp"
#include "trlp/newton_step.hpp"

namespace trlp {

void validate(const SolverConfig& cfg) {
  if (!(0.0 < cfg.eta_a && cfg.eta_a < cfg.eta1 && cfg.eta1 < cfg.eta2 && cfg.eta2 < 1.0)) {
    throw InvalidArgument("SolverConfig: need 0 < eta_a < eta1 < eta2 < 1");
  }
  if (!(cfg.dt0 > 0.0)) throw InvalidArgument("SolverConfig: dt0 must be positive");
  if (!(cfg.epsilon > 0.0)) throw InvalidArgument("SolverConfig: epsilon must be positive");
  if (cfg.maxit < 1) throw InvalidArgument("SolverConfig: maxit must be at least 1");
  if (!(cfg.big_m_factor > 0.0)) throw InvalidArgument("SolverConfig: big_m_factor must be positive");
  if (!(cfg.rank_tol > 0.0)) throw InvalidArgument("SolverConfig: rank_tol must be positive");
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iterations: return "max-iterations";
    case SolveStatus::stalled: return "stalled";
    case SolveStatus::numerical_failure: return "numerical-failure";
  }
  return "unknown";
}

double update_time_step(double dt, double rho, bool trial_positive, const SolverConfig& cfg) {
  const double deviation = std::abs(1.0 - rho);
  if (trial_positive && deviation <= cfg.eta1) return std::min(2.0 * dt, kMaxTimeStep);
  if (trial_positive && deviation > cfg.eta1 && deviation <= cfg.eta2) return dt;
  return 0.5 * dt;
}

bool accept_trial(double rho, bool trial_positive, const SolverConfig& cfg) {
  return trial_positive && rho >= cfg.eta_a;
}

Iterate big_m_start(const StandardFormLP& lp, double big_m_factor) {
  const double big_m = std::max({lp.a.max_abs(), norm_inf(lp.b), norm_inf(lp.c)});
  const double start = big_m_factor * (big_m > 0.0 ? big_m : 1.0);
  return Iterate{Vector(lp.num_cols(), start), Vector(lp.num_rows(), 0.0),
                 Vector(lp.num_cols(), start)};
}

namespace {

// Stacked F_{sigma mu}(z) blocks.
struct Merit {
  Vector primal;  // A x - b
  Vector dual;    // A^T y + s - c
  Vector comp;    // x .* s - sigma_mu
};

Merit evaluate(const StandardFormLP& lp, const Iterate& z, double sigma_mu) {
  Residuals r = residuals(lp, z, sigma_mu);
  return {std::move(r.rp), std::move(r.rd), std::move(r.rc)};
}

double stacked_norm2(const Vector& a, const Vector& b, const Vector& c) {
  const double na = norm2(a);
  const double nb = norm2(b);
  const double nc = norm2(c);
  return std::sqrt(na * na + nb * nb + nc * nc);
}

double min_complementarity(const Iterate& z) {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < z.x.size(); ++j) lo = std::min(lo, z.x[j] * z.s[j]);
  return lo;
}

void fill_solution_metrics(const StandardFormLP& lp, SolveReport& report) {
  const Residuals r = residuals(lp, report.z, 0.0);
  report.kkt_error_inf = r.kkt_error_inf;
  report.duality_gap = r.duality_gap;
  report.objective = objective(lp, report.z.x);
}

}  // namespace

SolveReport run_trust_region(const StandardFormLP& lp, Iterate start, const SolverConfig& cfg,
                             bool record_trace) {
  validate(lp);
  validate(cfg);
  const std::size_t m = lp.num_rows();
  const std::size_t n = lp.num_cols();
  if (start.x.size() != n || start.s.size() != n || start.y.size() != m) {
    throw InvalidArgument("run_trust_region: starting point has wrong dimensions");
  }
  if (!strictly_positive(start.x) || !strictly_positive(start.s)) {
    throw InvalidArgument("run_trust_region: starting point must have x, s > 0");
  }

  const auto clock_start = std::chrono::steady_clock::now();
  SolveReport report;
  report.rank = m;

  Iterate z = std::move(start);
  double dt = cfg.dt0;
  bool fresh = true;
  bool finished = false;
  std::size_t direction_count = 0;

  Merit f;
  StepDirection d;
  double norm_f = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
  double resk = 0.0;
  double proximity = 0.0;
  double gap = 0.0;

  while (direction_count < cfg.maxit) {
    if (fresh) {
      ++direction_count;
      const Residuals r = residuals(lp, z, 0.0);
      mu = r.mu;
      resk = r.kkt_error_inf;
      gap = r.duality_gap;
      if (resk < cfg.epsilon) {
        report.status = SolveStatus::converged;
        finished = true;
        break;
      }
      sigma = sigma_rule(mu);
      const double sigma_mu = sigma * mu;
      f = Merit{r.rp, r.rd, r.rc};
      for (double& v : f.comp) v -= sigma_mu;
      norm_f = stacked_norm2(f.primal, f.dual, f.comp);
      proximity = mu > 0.0 ? min_complementarity(z) / mu : 0.0;
      try {
        d = newton_direction(lp, z, sigma_mu);
      } catch (const IllConditionedStepError& e) {
        report.status = SolveStatus::numerical_failure;
        report.message = e.what();
        finished = true;
        break;
      } catch (const InteriorViolationError& e) {
        report.status = SolveStatus::numerical_failure;
        report.message = e.what();
        finished = true;
        break;
      }
    }

    const double sigma_mu = sigma * mu;
    const double alpha = step_factor(dt);
    Iterate trial = apply_scaled_step(z, d, alpha);
    const bool positive = strictly_positive(trial.x) && strictly_positive(trial.s);

    Merit f_trial = evaluate(lp, trial, sigma_mu);
    // Linear model: the first two blocks of F are affine in z, so they are
    // exact; the third block drops the second-order term dx .* ds.
    Vector lin_comp(n);
    for (std::size_t j = 0; j < n; ++j) {
      lin_comp[j] = f.comp[j] + z.x[j] * (trial.s[j] - z.s[j]) + z.s[j] * (trial.x[j] - z.x[j]);
    }
    const double norm_trial = stacked_norm2(f_trial.primal, f_trial.dual, f_trial.comp);
    const double norm_model = stacked_norm2(f_trial.primal, f_trial.dual, lin_comp);
    const double predicted = norm_f - norm_model;
    const double rho = predicted > 1e-14 * norm_f ? (norm_f - norm_trial) / predicted
                                                   : std::numeric_limits<double>::quiet_NaN();

    const double next_dt = update_time_step(dt, rho, positive, cfg);
    const bool accepted = accept_trial(rho, positive, cfg);

    if (record_trace) {
      report.trace.push_back(TraceRecord{mu, sigma, dt, alpha, rho, resk, accepted, proximity, 0.0, gap});
    }
    ++report.trial_steps;

    dt = next_dt;
    if (accepted) {
      z = std::move(trial);
      ++report.successful_iterations;
      fresh = true;
    } else {
      fresh = false;
      if (dt < kMinTimeStep) {
        report.status = SolveStatus::stalled;
        report.message = "time step fell below 1e-14 without an accepted trial";
        finished = true;
        break;
      }
    }
  }

  if (!finished) {
    // The last accepted point has not been tested yet.
    const double final_resk = residuals(lp, z, 0.0).kkt_error_inf;
    report.status = final_resk < cfg.epsilon ? SolveStatus::converged : SolveStatus::max_iterations;
  }

  report.z = std::move(z);
  fill_solution_metrics(lp, report);
  report.reduced_resk = report.kkt_error_inf;
  report.elapsed = std::chrono::steady_clock::now() - clock_start;
  return report;
}

namespace {

SolveReport solve_impl(const StandardFormLP& lp, const SolverConfig& cfg, bool record_trace) {
  const auto clock_start = std::chrono::steady_clock::now();
  validate(lp);
  validate(cfg);

  ReducedProblem reduced;
  try {
    reduced = reduce(lp, cfg.rank_tol);
  } catch (const DegenerateProblemError& e) {
    SolveReport failed;
    failed.status = SolveStatus::numerical_failure;
    failed.message = e.what();
    failed.kkt_error_inf = std::numeric_limits<double>::infinity();
    failed.duality_gap = std::numeric_limits<double>::infinity();
    failed.objective = std::numeric_limits<double>::quiet_NaN();
    failed.elapsed = std::chrono::steady_clock::now() - clock_start;
    return failed;
  }

  const StandardFormLP reduced_lp = reduced.as_lp(lp.name);
  SolveReport report =
      run_trust_region(reduced_lp, big_m_start(reduced_lp, cfg.big_m_factor), cfg, record_trace);

  report.reduced_resk = report.kkt_error_inf;
  report.z = recover(reduced, report.z);
  report.rank = reduced.rank;
  fill_solution_metrics(lp, report);
  report.elapsed = std::chrono::steady_clock::now() - clock_start;
  return report;
}

}  // namespace

SolveReport solve(const StandardFormLP& lp, const SolverConfig& cfg) {
  return solve_impl(lp, cfg, false);
}

SolveReport solve_with_trace(const StandardFormLP& lp, const SolverConfig& cfg) {
  return solve_impl(lp, cfg, true);
}

}  // namespace trlp
