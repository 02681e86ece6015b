#pragma once

// Dense linear-algebra kernel: Householder QR (plain and column-pivoted),
// triangular solves and the handful of vector helpers the solvers share.
//
// Storage is row-major throughout: entry (i, j) lives at data[i * cols + j].

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace trlp {

using Vector = std::vector<double>;

class DenseMatrix {
 public:
  DenseMatrix() = default;

  // Zero-filled rows x cols matrix.
  DenseMatrix(std::size_t rows, std::size_t cols);

  // Takes ownership of row-major entries. Throws InvalidArgument when the
  // length is not rows * cols or any entry is NaN/Inf.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  // Nested-list literal, mainly for tests: {{1, 2}, {3, 4}}.
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<const double> data() const noexcept { return data_; }

  DenseMatrix transpose() const;

  // Largest absolute entry; 0 for an empty matrix.
  double max_abs() const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);

// a * x
Vector multiply(const DenseMatrix& a, std::span<const double> x);

// a^T * y
Vector multiply_transposed(const DenseMatrix& a, std::span<const double> y);

double dot(std::span<const double> a, std::span<const double> b);
double norm1(std::span<const double> v);
double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);

// AP = QR with Householder reflections and Businger-Golub column pivoting.
//
// q is m x m orthogonal, r is m x n upper trapezoidal, and perm[j] is the
// original index of the column placed at position j, so that
// A(:, perm[j]) = (Q R)(:, j).
struct PivotedQR {
  DenseMatrix q;
  DenseMatrix r;
  std::vector<std::size_t> perm;
  std::size_t rank = 0;
};

inline constexpr double kDefaultRankTol = 1e-8;

// rank is the largest k with |r(k-1, k-1)| > rank_tol * |r(0, 0)|.
PivotedQR qr_column_pivoting(const DenseMatrix& a, double rank_tol = kDefaultRankTol);

// Economy QR of a tall matrix: a (p x q, p >= q) = q1 (p x q) * r1 (q x q).
struct ThinQR {
  DenseMatrix q1;
  DenseMatrix r1;
};

inline constexpr double kSingularFactorTol = 1e-12;

// Throws SingularFactorError naming the first column whose diagonal falls
// below 1e-12 * |r1(0, 0)|.
ThinQR thin_qr(const DenseMatrix& a);

// Same factorization, without forming q1.
DenseMatrix thin_qr_r(const DenseMatrix& a);

// Back substitution. Throws SingularSystemError if a diagonal entry is
// below 1e-14 * max |diag|.
Vector solve_upper_triangular(const DenseMatrix& r, std::span<const double> rhs);

// Forward substitution, same contract as solve_upper_triangular.
Vector solve_lower_triangular(const DenseMatrix& l, std::span<const double> rhs);

}  // namespace trlp
