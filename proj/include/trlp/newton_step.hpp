#pragma once

#include "trlp/lp_model.hpp"

namespace trlp {

struct StepDirection {
  Vector dx;
  Vector dy;
  Vector ds;
  // Achieved max-norm residual of the three block equations.
  double linear_residual_inf = 0.0;
};

// Solves the perturbed Newton system
//
//   [ A   0   0 ] [dx]     [ A x - b             ]
//   [ 0   A^T I ] [dy] = - [ A^T y + s - c       ]
//   [ S   0   X ] [ds]     [ x .* s - sigma_mu e ]
//
// by eliminating to A X S^-1 A^T dy = -(rp + A S^-1 (X rd - rc)). The normal
// matrix is never formed: with D = diag(sqrt(x ./ s)), the R factor of
// D A^T = Q R satisfies R^T R = A D^2 A^T, so two triangular solves give dy.
//
// Requires x, s > 0 (InteriorViolationError) and A of full row rank.
// A rank-deficient D A^T or an inaccurate solve raises IllConditionedStepError.
StepDirection newton_direction(const StandardFormLP& lp, const Iterate& z, double sigma_mu);

// Damping factor dt / (1 + dt) of the implicit-Euler continuation step.
inline double step_factor(double dt) { return dt / (1.0 + dt); }

// z + step_factor(dt) * d. Positivity is the caller's business.
Iterate apply_step(const Iterate& z, const StepDirection& d, double dt);

// Same update with an explicit factor alpha.
Iterate apply_scaled_step(const Iterate& z, const StepDirection& d, double alpha);

// Max-norm residual of the block system for a candidate direction.
double newton_system_residual(const StandardFormLP& lp, const Iterate& z, double sigma_mu,
                              const StepDirection& d);

}  // namespace trlp
