#pragma once

// Dense real matrices, a cyclic Jacobi eigensolver and the spectral
// operator functions built on it (sqrt, log, support/kernel projectors).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "densem/errors.hpp"

namespace densem {

enum class LogBase { kTwo, kE };

inline double log_in(LogBase base, double x) {
  return base == LogBase::kTwo ? std::log2(x) : std::log(x);
}

// Numerical thresholds shared by every spectral test.
//   rank_cut:  eigenvalues below rank_cut * lambda_max count as zero.
//   match_tol: equality tolerance for operators and overlaps.
struct Tolerance {
  double rank_cut = 1e-9;
  double match_tol = 1e-9;

  constexpr Tolerance() = default;
  Tolerance(double rank, double match) : rank_cut(rank), match_tol(match) {
    if (!(rank > 0.0 && rank < 1.0) || !(match > 0.0 && match < 1.0)) {
      throw std::invalid_argument("tolerances must lie in (0, 1)");
    }
  }
};

// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw ShapeError("matrix data has " + std::to_string(data_.size()) +
                       " entries, expected " + std::to_string(rows_ * cols_));
    }
  }
  Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw ShapeError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw ShapeError("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * c);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  std::vector<double> column(std::size_t j) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  std::vector<std::vector<double>> to_rows() const {
    std::vector<std::vector<double>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      out[i].assign(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
  }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](double x) { return std::isfinite(x); });
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(double s) {
    for (double& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw ShapeError("cannot multiply " + a.shape_string() + " by " + b.shape_string());
    }
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  bool operator==(const Matrix&) const = default;

  std::string shape_string() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw ShapeError("shape mismatch: " + shape_string() + " vs " + o.shape_string());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

// Square matrix kept exactly symmetric: every constructor replaces the
// input with (A + A^T) / 2.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim) : m_(dim, dim) {}
  explicit SymMatrix(Matrix m) : m_(std::move(m)) {
    if (!m_.square()) throw ShapeError("symmetric matrix must be square, got " + m_.shape_string());
    symmetrize();
  }
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : SymMatrix(Matrix(rows)) {}

  static SymMatrix identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }
  static SymMatrix diagonal(std::span<const double> d) {
    SymMatrix s(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) s.m_(i, i) = d[i];
    return s;
  }
  static SymMatrix diagonal(std::initializer_list<double> d) {
    return diagonal(std::span<const double>(d.begin(), d.size()));
  }

  std::size_t dim() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }
  double trace() const { return m_.trace(); }
  double max_abs() const { return m_.max_abs(); }

  SymMatrix& operator+=(const SymMatrix& o) {
    m_ += o.m_;
    return *this;
  }
  SymMatrix& operator-=(const SymMatrix& o) {
    m_ -= o.m_;
    return *this;
  }
  SymMatrix& operator*=(double s) {
    m_ *= s;
    return *this;
  }
  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(SymMatrix a, double s) { return a *= s; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

  bool operator==(const SymMatrix&) const = default;

 private:
  void symmetrize() {
    const std::size_t n = m_.rows();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double avg = 0.5 * (m_(i, j) + m_(j, i));
        m_(i, j) = avg;
        m_(j, i) = avg;
      }
  }

  Matrix m_;
};

inline double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
  return max_abs_diff(a.matrix(), b.matrix());
}

inline SymMatrix outer(std::span<const double> v) {
  Matrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * v[j];
  return SymMatrix(std::move(m));
}

// Kronecker product; index (i, k) of the result is i * dim(b) + k.
inline SymMatrix kron(const SymMatrix& a, const SymMatrix& b) {
  const std::size_t da = a.dim(), db = b.dim();
  Matrix m(da * db, da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const double aij = a(i, j);
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) m(i * db + k, j * db + l) = aij * b(k, l);
    }
  return SymMatrix(std::move(m));
}

// Entrywise (Schur) product.
inline SymMatrix hadamard(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    throw ShapeError("hadamard of " + std::to_string(a.dim()) + " and " +
                     std::to_string(b.dim()) + " dimensional operators");
  }
  Matrix m = a.matrix();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) *= b(i, j);
  return SymMatrix(std::move(m));
}

// Eigenvalues sorted descending; eigenvectors are the matching columns.
struct EigenSystem {
  std::vector<double> values;
  Matrix vectors;

  std::size_t dim() const noexcept { return values.size(); }
  double max_value() const { return values.empty() ? 0.0 : values.front(); }
};

namespace detail {

inline constexpr int kMaxJacobiSweeps = 100;

// First component with magnitude above `eps` is made positive.
inline void fix_sign(std::vector<double>& v) {
  for (double x : v) {
    if (std::abs(x) > 1e-12) {
      if (x < 0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

}  // namespace detail

// Cyclic Jacobi eigendecomposition. Ordering is deterministic: descending
// eigenvalue; within a cluster of (near-)equal eigenvalues, eigenvectors in
// descending lexicographic order. Every eigenvector has its first nonzero
// component positive.
inline EigenSystem eigh(const SymMatrix& input) {
  const std::size_t n = input.dim();
  if (!input.matrix().all_finite()) {
    throw NumericFailure("eigh: non-finite entry in " + std::to_string(n) + "x" +
                         std::to_string(n) + " matrix");
  }
  Matrix a = input.matrix();
  Matrix v = Matrix::identity(n);

  double scale = 0.0;
  for (double x : a.data()) scale += x * x;
  scale = std::sqrt(scale);
  const double target = 4.0 * std::numeric_limits<double>::epsilon() * scale;

  bool converged = false;
  for (int sweep = 0; sweep < detail::kMaxJacobiSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(2.0 * off) <= target) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p), aqq = a(q, q);
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) {
    throw NumericFailure("eigh: Jacobi did not converge within " +
                         std::to_string(detail::kMaxJacobiSweeps) + " sweeps for a " +
                         std::to_string(n) + "x" + std::to_string(n) + " matrix");
  }

  struct Pair {
    double value;
    std::vector<double> vec;
  };
  std::vector<Pair> pairs(n);
  for (std::size_t i = 0; i < n; ++i) {
    pairs[i].value = a(i, i);
    pairs[i].vec = v.column(i);
    detail::fix_sign(pairs[i].vec);
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& x, const Pair& y) { return x.value > y.value; });
  const double tie = 1e-12 * std::max(1.0, n ? std::abs(pairs.front().value) : 0.0);
  for (std::size_t begin = 0; begin < n;) {
    std::size_t end = begin + 1;
    while (end < n && pairs[end - 1].value - pairs[end].value <= tie) ++end;
    if (end - begin > 1) {
      std::sort(pairs.begin() + begin, pairs.begin() + end,
                [](const Pair& x, const Pair& y) { return x.vec > y.vec; });
    }
    begin = end;
  }

  EigenSystem es;
  es.values.resize(n);
  es.vectors = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    es.values[i] = pairs[i].value;
    for (std::size_t k = 0; k < n; ++k) es.vectors(k, i) = pairs[i].vec[k];
  }
  return es;
}

// Sum of f(lambda_i) v_i v_i^T over eigenpairs accepted by `keep`.
inline SymMatrix spectral_sum(const EigenSystem& es,
                              const std::function<double(double)>& f,
                              const std::function<bool(double)>& keep) {
  const std::size_t n = es.dim();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lambda = es.values[i];
    if (!keep(lambda)) continue;
    const double w = f(lambda);
    for (std::size_t r = 0; r < n; ++r) {
      const double vr = w * es.vectors(r, i);
      if (vr == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * es.vectors(c, i);
    }
  }
  return SymMatrix(std::move(out));
}

// Eigenvalues above this are "nonzero" under the relative rank cut.
inline double support_threshold(const EigenSystem& es, const Tolerance& tol) {
  return tol.rank_cut * std::max(es.max_value(), 0.0);
}

inline bool is_psd(const EigenSystem& es, const Tolerance& tol = {}) {
  double scale = 0.0;
  for (double x : es.values) scale = std::max(scale, std::abs(x));
  return es.values.empty() || es.values.back() >= -tol.rank_cut * scale;
}

inline bool is_psd(const SymMatrix& a, const Tolerance& tol = {}) { return is_psd(eigh(a), tol); }

inline SymMatrix mat_sqrt(const SymMatrix& a, const Tolerance& tol = {}) {
  const EigenSystem es = eigh(a);
  if (!is_psd(es, tol)) {
    throw NotPsdError("mat_sqrt: eigenvalue " + std::to_string(es.values.back()) +
                      " is below the PSD threshold");
  }
  return spectral_sum(
      es, [](double l) { return std::sqrt(std::max(l, 0.0)); }, [](double l) { return l > 0.0; });
}

// Logarithm on the support; eigenvalues at or below the rank cut contribute
// nothing.
inline SymMatrix mat_log(const SymMatrix& a, LogBase base, const Tolerance& tol = {}) {
  const EigenSystem es = eigh(a);
  const double cut = support_threshold(es, tol);
  return spectral_sum(
      es, [base](double l) { return log_in(base, l); },
      [cut](double l) { return l > cut && l > 0.0; });
}

inline SymMatrix mat_log2(const SymMatrix& a, const Tolerance& tol = {}) {
  return mat_log(a, LogBase::kTwo, tol);
}

inline SymMatrix support_projector(const EigenSystem& es, const Tolerance& tol = {}) {
  const double cut = support_threshold(es, tol);
  return spectral_sum(
      es, [](double) { return 1.0; }, [cut](double l) { return l > cut && l > 0.0; });
}

inline SymMatrix support_projector(const SymMatrix& a, const Tolerance& tol = {}) {
  return support_projector(eigh(a), tol);
}

inline SymMatrix kernel_projector(const SymMatrix& a, const Tolerance& tol = {}) {
  return SymMatrix::identity(a.dim()) - support_projector(a, tol);
}

inline std::size_t rank(const SymMatrix& a, const Tolerance& tol = {}) {
  const EigenSystem es = eigh(a);
  const double cut = support_threshold(es, tol);
  return static_cast<std::size_t>(std::count_if(
      es.values.begin(), es.values.end(), [cut](double l) { return l > cut && l > 0.0; }));
}

// Singular values of a general matrix by one-sided Jacobi, descending. Small
// singular values keep absolute accuracy near eps * ||a||, unlike square
// roots of eigenvalues of a^T a.
inline std::vector<double> singular_values(const Matrix& input) {
  Matrix a = input.rows() >= input.cols() ? input : input.transpose();
  const std::size_t m = a.rows(), n = a.cols();
  const double eps = std::numeric_limits<double>::epsilon();
  bool converged = n < 2;
  for (int sweep = 0; sweep < detail::kMaxJacobiSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          alpha += a(k, p) * a(k, p);
          beta += a(k, q) * a(k, q);
          gamma += a(k, p) * a(k, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t), s = c * t;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
      }
  }
  if (!converged) {
    throw NumericFailure("singular_values: Jacobi did not converge for a " + input.shape_string() + " matrix");
  }
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    double norm = 0.0;
    for (std::size_t k = 0; k < m; ++k) norm += a(k, j) * a(k, j);
    out[j] = std::sqrt(norm);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace densem
