#include "trlp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "trlp/errors.hpp"

namespace trlp {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw InvalidArgument("DenseMatrix: expected " + std::to_string(rows * cols) +
                          " entries, got " + std::to_string(data_.size()));
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw InvalidArgument("DenseMatrix: non-finite entry");
  }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("DenseMatrix: ragged initializer");
    for (double v : r) {
      if (!std::isfinite(v)) throw InvalidArgument("DenseMatrix: non-finite entry");
      data_.push_back(v);
    }
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix eye(n, n);
  for (std::size_t i = 0; i < n; ++i) eye(i, i) = 1.0;
  return eye;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("multiply: inner dimensions differ");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Vector multiply(const DenseMatrix& a, std::span<const double> x) {
  if (x.size() != a.cols()) throw InvalidArgument("multiply: vector length != cols");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ai = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += ai[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vector multiply_transposed(const DenseMatrix& a, std::span<const double> y) {
  if (y.size() != a.rows()) throw InvalidArgument("multiply_transposed: vector length != rows");
  Vector x(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double yi = y[i];
    if (yi == 0.0) continue;
    auto ai = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) x[j] += ai[j] * yi;
  }
  return x;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("dot: length mismatch");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm1(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += std::abs(e);
  return s;
}

double norm2(std::span<const double> v) {
  // Scaled accumulation avoids overflow for large entries.
  const double scale = norm_inf(v);
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double e : v) {
    const double t = e / scale;
    s += t * t;
  }
  return scale * std::sqrt(s);
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

namespace {

struct Reflector {
  std::size_t start = 0;  // first row the reflector touches
  Vector v;
  double beta = 0.0;      // H = I - beta v v^T; beta == 0 means identity
};

// Builds the reflector mapping work(k:m, col) onto -sign * norm * e_1, applies
// it to columns [col, work.cols()) and returns it.
Reflector reflect_column(DenseMatrix& work, std::size_t k, std::size_t col) {
  const std::size_t m = work.rows();
  Reflector h;
  h.start = k;
  h.v.resize(m - k);
  for (std::size_t i = k; i < m; ++i) h.v[i - k] = work(i, col);
  const double norm = norm2(h.v);
  if (norm == 0.0) return h;

  const double alpha = h.v[0] >= 0.0 ? -norm : norm;
  h.v[0] -= alpha;
  const double vtv = dot(h.v, h.v);
  h.beta = 2.0 / vtv;

  for (std::size_t j = col + 1; j < work.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = k; i < m; ++i) s += h.v[i - k] * work(i, j);
    s *= h.beta;
    if (s == 0.0) continue;
    for (std::size_t i = k; i < m; ++i) work(i, j) -= s * h.v[i - k];
  }
  work(k, col) = alpha;
  for (std::size_t i = k + 1; i < m; ++i) work(i, col) = 0.0;
  return h;
}

void apply_reflector(const Reflector& h, DenseMatrix& target) {
  if (h.beta == 0.0) return;
  const std::size_t m = target.rows();
  for (std::size_t j = 0; j < target.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = h.start; i < m; ++i) s += h.v[i - h.start] * target(i, j);
    s *= h.beta;
    if (s == 0.0) continue;
    for (std::size_t i = h.start; i < m; ++i) target(i, j) -= s * h.v[i - h.start];
  }
}

// Q = H_0 H_1 ... H_{t-1} restricted to its first `cols` columns.
DenseMatrix accumulate_q(const std::vector<Reflector>& reflectors, std::size_t rows,
                         std::size_t cols) {
  DenseMatrix q(rows, cols);
  for (std::size_t i = 0; i < std::min(rows, cols); ++i) q(i, i) = 1.0;
  for (auto it = reflectors.rbegin(); it != reflectors.rend(); ++it) apply_reflector(*it, q);
  return q;
}

void check_finite(const DenseMatrix& a, const char* who) {
  for (double v : a.data()) {
    if (!std::isfinite(v)) throw InvalidArgument(std::string(who) + ": non-finite entry");
  }
}

}  // namespace

PivotedQR qr_column_pivoting(const DenseMatrix& a, double rank_tol) {
  if (a.empty()) throw InvalidArgument("qr_column_pivoting: matrix has a zero dimension");
  if (!(rank_tol > 0.0)) throw InvalidArgument("qr_column_pivoting: rank_tol must be positive");
  check_finite(a, "qr_column_pivoting");

  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t steps = std::min(m, n);

  DenseMatrix work = a;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<Reflector> reflectors;
  reflectors.reserve(steps);

  for (std::size_t k = 0; k < steps; ++k) {
    // Trailing column norms are recomputed rather than downdated; at the
    // sizes handled here the extra O(mn) per step is irrelevant and it keeps
    // the pivot order exact.
    std::size_t best = k;
    double best_norm = -1.0;
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += work(i, j) * work(i, j);
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    if (best != k) {
      for (std::size_t i = 0; i < m; ++i) std::swap(work(i, k), work(i, best));
      std::swap(perm[k], perm[best]);
    }
    if (best_norm == 0.0) break;
    reflectors.push_back(reflect_column(work, k, k));
  }

  PivotedQR out;
  out.q = accumulate_q(reflectors, m, m);
  out.r = std::move(work);
  out.perm = std::move(perm);

  const double lead = std::abs(out.r(0, 0));
  std::size_t rank = 0;
  if (lead > 0.0) {
    while (rank < steps && std::abs(out.r(rank, rank)) > rank_tol * lead) ++rank;
  }
  out.rank = rank;
  return out;
}

namespace {

std::vector<Reflector> factor_tall(DenseMatrix& work, const char* who) {
  if (work.empty()) throw InvalidArgument(std::string(who) + ": matrix has a zero dimension");
  if (work.rows() < work.cols()) throw InvalidArgument(std::string(who) + ": fewer rows than columns");
  check_finite(work, who);

  const std::size_t q = work.cols();
  std::vector<Reflector> reflectors;
  reflectors.reserve(q);
  for (std::size_t k = 0; k < q; ++k) reflectors.push_back(reflect_column(work, k, k));

  const double lead = std::abs(work(0, 0));
  for (std::size_t k = 0; k < q; ++k) {
    const double d = std::abs(work(k, k));
    if (lead == 0.0 || d < kSingularFactorTol * lead) {
      throw SingularFactorError(k, std::string(who) + ": column " + std::to_string(k) +
                                       " is numerically dependent (|r_kk| = " +
                                       std::to_string(d) + ")");
    }
  }
  return reflectors;
}

DenseMatrix upper_square(const DenseMatrix& work) {
  const std::size_t q = work.cols();
  DenseMatrix r(q, q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i; j < q; ++j) r(i, j) = work(i, j);
  return r;
}

}  // namespace

ThinQR thin_qr(const DenseMatrix& a) {
  DenseMatrix work = a;
  const auto reflectors = factor_tall(work, "thin_qr");
  return {accumulate_q(reflectors, a.rows(), a.cols()), upper_square(work)};
}

DenseMatrix thin_qr_r(const DenseMatrix& a) {
  DenseMatrix work = a;
  factor_tall(work, "thin_qr");
  return upper_square(work);
}

namespace {

void check_triangular_system(const DenseMatrix& t, std::span<const double> rhs, const char* who) {
  if (t.rows() != t.cols()) throw InvalidArgument(std::string(who) + ": matrix is not square");
  if (rhs.size() != t.rows()) throw InvalidArgument(std::string(who) + ": rhs length mismatch");
  double max_diag = 0.0;
  for (std::size_t i = 0; i < t.rows(); ++i) max_diag = std::max(max_diag, std::abs(t(i, i)));
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (max_diag == 0.0 || std::abs(t(i, i)) < 1e-14 * max_diag) {
      throw SingularSystemError(i, std::string(who) + ": singular diagonal at index " +
                                       std::to_string(i));
    }
  }
}

}  // namespace

Vector solve_upper_triangular(const DenseMatrix& r, std::span<const double> rhs) {
  check_triangular_system(r, rhs, "solve_upper_triangular");
  const std::size_t n = r.rows();
  Vector x(rhs.begin(), rhs.end());
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= r(ii, j) * x[j];
    x[ii] = s / r(ii, ii);
  }
  return x;
}

Vector solve_lower_triangular(const DenseMatrix& l, std::span<const double> rhs) {
  check_triangular_system(l, rhs, "solve_lower_triangular");
  const std::size_t n = l.rows();
  Vector x(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < n; ++i) {
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= l(i, j) * x[j];
    x[i] = s / l(i, i);
  }
  return x;
}

}  // namespace trlp
