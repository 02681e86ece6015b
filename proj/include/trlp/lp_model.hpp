#pragma once

#include <string>

#include "trlp/linalg.hpp"

namespace trlp {

// min c^T x  subject to  A x = b,  x >= 0.
struct StandardFormLP {
  DenseMatrix a;
  Vector b;
  Vector c;
  std::string name;

  std::size_t num_rows() const noexcept { return a.rows(); }
  std::size_t num_cols() const noexcept { return a.cols(); }
};

// Throws InvalidArgument unless m, n >= 1, b and c match A, and every entry is finite.
void validate(const StandardFormLP& lp);

// Primal-dual point z = (x, y, s).
struct Iterate {
  Vector x;
  Vector y;
  Vector s;
};

bool strictly_positive(std::span<const double> v);

struct Residuals {
  Vector rp;  // A x - b
  Vector rd;  // A^T y + s - c
  Vector rc;  // x .* s - sigma_mu
  double mu = 0.0;
  double kkt_error_inf = 0.0;  // max(|rp|_inf, |rd|_inf, |x .* s|_inf)
  double duality_gap = 0.0;    // x^T s
};

Residuals residuals(const StandardFormLP& lp, const Iterate& z, double sigma_mu);

// Centering parameter: (|Ax - b|_1 + |A^T y + s - c|_1 + x^T s) / n. Unlike
// the textbook x^T s / n, the feasibility residuals contribute too.
double mu_rule(const StandardFormLP& lp, const Iterate& z);

// min(0.05, mu). Throws InvalidArgument for negative mu.
double sigma_rule(double mu);

// The same max-norm KKT error as Residuals::kkt_error_inf, without the other blocks.
double kkt_error(const StandardFormLP& lp, const Iterate& z);

double objective(const StandardFormLP& lp, std::span<const double> x);

}  // namespace trlp
