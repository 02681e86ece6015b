#pragma once

// Classical long-step primal-dual path following, used as the comparison
// method. It runs on the raw problem with no rank repair, so a dependent row
// in A surfaces as a numerical failure of the Newton solve.

#include "trlp/solver.hpp"

namespace trlp {

struct BaselineConfig {
  double epsilon = 1e-6;
  std::size_t maxit = 200;
  double sigma = 0.1;
  double boundary_fraction = 0.9995;
  double big_m_factor = 1.0;
};

void validate(const BaselineConfig& cfg);

// Largest alpha in (0, inf) with v + alpha * dv > 0; +inf if dv >= 0.
double max_positive_step(std::span<const double> v, std::span<const double> dv);

SolveReport solve_baseline(const StandardFormLP& lp, const BaselineConfig& cfg = {});

}  // namespace trlp
