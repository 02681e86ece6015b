#pragma once

// Rank repair for Ax = b.
//
// With AP = QR and r = rank(A), the least-squares problem min |Ax - b|^2
// collapses to R1 x~ = Q1^T b where R1 is the top r rows of R and Q1 the
// leading r columns of Q. The reduced LP
//
//   min (P^T c)^T x~  s.t.  R1 x~ = Q1^T b,  x~ >= 0
//
// has a full-row-rank, always-consistent constraint matrix, and a solution
// maps back through x = P x~, y = Q1 y~, s = P s~.

#include <vector>

#include "trlp/lp_model.hpp"

namespace trlp {

struct ReducedProblem {
  DenseMatrix r1;                 // rank x n
  Vector b_r;                     // Q1^T b
  Vector c_r;                     // P^T c
  std::vector<std::size_t> perm;  // reduced column j is original column perm[j]
  DenseMatrix q1;                 // original_m x rank
  std::size_t original_m = 0;
  std::size_t rank = 0;

  // The reduced LP as a standard-form problem (a = r1, b = b_r, c = c_r).
  StandardFormLP as_lp(std::string name = {}) const;
};

// Throws DegenerateProblemError when A has numerical rank 0.
ReducedProblem reduce(const StandardFormLP& lp, double rank_tol = kDefaultRankTol);

// Maps a reduced-space iterate back to the original variables.
Iterate recover(const ReducedProblem& rp, const Iterate& z_tilde);

// |A x - b|_2
double lsq_residual_norm(const StandardFormLP& lp, std::span<const double> x);

}  // namespace trlp
