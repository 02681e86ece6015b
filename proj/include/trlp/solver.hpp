#pragma once

// Primal-dual path following with trust-region control of the time step.
//
// Each outer pass computes the Newton direction for F_{sigma mu}(z) = 0 and
// then tries z + dt/(1+dt) d. The ratio between the achieved and the
// linearly predicted reduction of |F| decides whether the trial point is
// kept and whether dt grows, stays or shrinks. A rejected trial retries the
// same direction with half the time step.

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "trlp/lp_model.hpp"
#include "trlp/preprocess.hpp"

namespace trlp {

struct SolverConfig {
  double eta_a = 1e-6;   // acceptance threshold on rho
  double eta1 = 0.25;    // |1 - rho| <= eta1: double dt
  double eta2 = 0.75;    // |1 - rho| <= eta2: keep dt
  double epsilon = 1e-6; // stop when |F|_inf < epsilon
  double dt0 = 0.9;
  std::size_t maxit = 100;
  double big_m_factor = 1.0;  // x0 = s0 = big_m_factor * bigM
  double rank_tol = kDefaultRankTol;
};

// Throws InvalidArgument unless 0 < eta_a < eta1 < eta2 < 1, dt0 > 0,
// epsilon > 0, maxit >= 1, big_m_factor > 0 and rank_tol > 0.
void validate(const SolverConfig& cfg);

enum class SolveStatus { converged, max_iterations, stalled, numerical_failure };

std::string_view to_string(SolveStatus status);

struct TraceRecord {
  double mu = 0.0;        // centering value of the point the direction was built at
  double sigma = 0.0;
  double dt = 0.0;        // time step used for this trial
  double alpha = 0.0;     // applied step factor
  double rho = 0.0;       // NaN when the ratio denominator vanished
  double resk = 0.0;      // |F|_inf (unshifted) at the base point
  bool accepted = false;
  double proximity = 0.0;        // min(x .* s) / mu at the base point
  double boundary_alpha = 0.0;   // baseline only: largest positive step factor
  double duality_gap = 0.0;      // x^T s at the base point
};

struct SolveReport {
  SolveStatus status = SolveStatus::numerical_failure;
  Iterate z;                // original space
  double kkt_error_inf = 0.0;
  double duality_gap = 0.0;
  double objective = 0.0;
  double reduced_resk = 0.0;  // |F|_inf in the space the iteration ran in
  std::size_t successful_iterations = 0;  // accepted trial steps
  std::size_t trial_steps = 0;
  std::size_t rank = 0;
  std::chrono::duration<double> elapsed{};
  std::vector<TraceRecord> trace;
  std::string message;  // diagnostic for non-converged exits
};

// Rank repair, then the trust-region iteration on the reduced problem, then
// recovery to the original variables. The trace is left empty.
SolveReport solve(const StandardFormLP& lp, const SolverConfig& cfg = {});

// As solve, with one trace record per trial step.
SolveReport solve_with_trace(const StandardFormLP& lp, const SolverConfig& cfg = {});

// Big-M starting point: x0 = s0 = big_m_factor * max(max|A|, |b|_inf, |c|_inf), y0 = 0.
Iterate big_m_start(const StandardFormLP& lp, double big_m_factor);

// The trust-region iteration alone, from a caller-supplied interior point, on
// a problem whose A already has full row rank. The report lives in the space
// of `lp`; rank is set to lp.num_rows().
SolveReport run_trust_region(const StandardFormLP& lp, Iterate start, const SolverConfig& cfg,
                             bool record_trace);

// Time-step update for one trial.
//   |1 - rho| <= eta1 and positive trial            -> 2 dt
//   eta1 < |1 - rho| <= eta2 and positive trial     -> dt
//   otherwise (including a NaN rho)                 -> dt / 2
double update_time_step(double dt, double rho, bool trial_positive, const SolverConfig& cfg);

// rho >= eta_a and positive trial.
bool accept_trial(double rho, bool trial_positive, const SolverConfig& cfg);

inline constexpr double kMaxTimeStep = 1e12;
inline constexpr double kMinTimeStep = 1e-14;

}  // namespace trlp
