#pragma once

// Density-matrix meanings and the measures between them: fidelity,
// relative entropy, representativeness, and the entailment preorder.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "densem/errors.hpp"
#include "densem/specmat.hpp"

namespace densem {

// A positive-semidefinite operator of arbitrary nonnegative trace. The zero
// operator is representable (a false 1-D sentence composes to it) but every
// measure rejects it.
class DensityMatrix {
 public:
  DensityMatrix() = default;

  explicit DensityMatrix(SymMatrix op, const Tolerance& tol = {}) : op_(std::move(op)) {
    if (op_.dim() == 0) throw ShapeError("density matrix must have dimension >= 1");
    const EigenSystem es = eigh(op_);
    if (!is_psd(es, tol)) {
      throw NotPsdError("operator has eigenvalue " + std::to_string(es.values.back()) +
                        " below the PSD threshold");
    }
  }

  const SymMatrix& op() const noexcept { return op_; }
  std::size_t dim() const noexcept { return op_.dim(); }
  double trace() const { return op_.trace(); }
  bool normalized() const { return std::abs(trace() - 1.0) <= 1e-9; }
  bool is_zero() const { return op_.max_abs() == 0.0; }
  double operator()(std::size_t i, std::size_t j) const { return op_(i, j); }

 private:
  SymMatrix op_;
};

// Nonnegative real or +infinity.
class ExtendedReal {
 public:
  static ExtendedReal infinite() { return ExtendedReal(true, 0.0); }
  static ExtendedReal finite(double x) {
    if (!(x >= -1e-9)) {
      throw NumericFailure("extended real below zero: " + std::to_string(x));
    }
    return ExtendedReal(false, std::max(x, 0.0));
  }

  bool is_infinite() const noexcept { return infinite_; }
  // +inf for the infinite value.
  double to_double() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

 private:
  ExtendedReal(bool inf, double v) : infinite_(inf), value_(v) {}
  bool infinite_;
  double value_;
};

enum class Relation { kHyponym, kHypernym, kEquivalent, kIncomparable };

inline std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::kHyponym: return "HYPONYM";
    case Relation::kHypernym: return "HYPERNYM";
    case Relation::kEquivalent: return "EQUIVALENT";
    case Relation::kIncomparable: return "INCOMPARABLE";
  }
  return "?";
}

struct EntailmentVerdict {
  double forward = 0.0;   // R(rho, sigma)
  double backward = 0.0;  // R(sigma, rho)
  Relation relation = Relation::kIncomparable;
};

// Settings shared by the measures.
struct MeasureOptions {
  Tolerance tol{};
  LogBase base = LogBase::kTwo;
};

inline DensityMatrix pure(std::span<const double> v) {
  double norm2 = 0.0;
  for (double x : v) norm2 += x * x;
  if (v.empty() || norm2 == 0.0) throw DegenerateInputError("pure state of a zero vector");
  return DensityMatrix(outer(v));
}

inline DensityMatrix pure(std::initializer_list<double> v) {
  return pure(std::span<const double>(v.begin(), v.size()));
}

inline DensityMatrix mixture(std::span<const double> weights, std::span<const DensityMatrix> parts) {
  if (weights.size() != parts.size() || parts.empty()) {
    throw ShapeError("mixture needs equally many weights and parts (got " +
                     std::to_string(weights.size()) + " and " + std::to_string(parts.size()) + ")");
  }
  SymMatrix sum(parts.front().dim());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!(weights[i] > 0.0)) throw std::invalid_argument("mixture weights must be positive");
    if (parts[i].dim() != sum.dim()) {
      throw ShapeError("mixture part " + std::to_string(i) + " has dimension " +
                       std::to_string(parts[i].dim()) + ", expected " + std::to_string(sum.dim()));
    }
    sum += weights[i] * parts[i].op();
  }
  return DensityMatrix(std::move(sum));
}

inline DensityMatrix mixture(std::initializer_list<double> weights,
                             std::initializer_list<DensityMatrix> parts) {
  return mixture(std::span<const double>(weights.begin(), weights.size()),
                 std::span<const DensityMatrix>(parts.begin(), parts.size()));
}

inline DensityMatrix normalize(const DensityMatrix& rho) {
  const double t = rho.trace();
  if (!(t > 0.0)) throw DegenerateInputError("cannot normalize an operator of zero trace");
  return DensityMatrix((1.0 / t) * rho.op());
}

namespace detail {

inline void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, std::string_view what) {
  if (a.dim() != b.dim()) {
    throw ShapeError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                     " vs " + std::to_string(b.dim()) + ")");
  }
}

inline SymMatrix normalized_op(const DensityMatrix& rho) {
  const double t = rho.trace();
  if (!(t > 0.0)) throw DegenerateInputError("measure applied to an operator of zero trace");
  return (1.0 / t) * rho.op();
}

}  // namespace detail

// tr sqrt(sqrt(rho) sigma sqrt(rho)) on normalized inputs, clamped to [0, 1].
// Evaluated as the sum of singular values of sqrt(rho) sqrt(sigma), each
// factor restricted to its support under the rank cut.
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma,
                       const Tolerance& tol = {}) {
  detail::require_same_dim(rho, sigma, "fidelity");
  const EigenSystem r = eigh(detail::normalized_op(rho));
  const EigenSystem s = eigh(detail::normalized_op(sigma));
  if (!is_psd(r, tol) || !is_psd(s, tol)) throw NotPsdError("fidelity: operator is not PSD");
  const auto root_factor = [&](const EigenSystem& es) {
    const double cut = support_threshold(es, tol);
    std::size_t k = 0;
    while (k < es.dim() && es.values[k] > cut && es.values[k] > 0.0) ++k;
    Matrix f(es.dim(), k);
    for (std::size_t j = 0; j < k; ++j) {
      const double w = std::sqrt(es.values[j]);
      for (std::size_t i = 0; i < es.dim(); ++i) f(i, j) = w * es.vectors(i, j);
    }
    return f;
  };
  const Matrix a = root_factor(r).transpose() * root_factor(s);
  double f = 0.0;
  for (double x : singular_values(a)) f += x;
  return std::clamp(f, 0.0, 1.0);
}

// supp(rho) is inside supp(sigma): the part of rho living in ker(sigma) is
// negligible relative to tr(rho).
inline bool supp_leq(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerance& tol = {}) {
  detail::require_same_dim(rho, sigma, "supp_leq");
  const Matrix k = kernel_projector(sigma.op(), tol).matrix();
  const Matrix leak = k * rho.op().matrix() * k;
  return leak.max_abs() <= tol.match_tol * std::abs(rho.trace());
}

inline ExtendedReal relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                                     const MeasureOptions& opt = {}) {
  detail::require_same_dim(rho, sigma, "relative_entropy");
  const SymMatrix r = detail::normalized_op(rho);
  const SymMatrix s = detail::normalized_op(sigma);
  if (!supp_leq(rho, sigma, opt.tol)) return ExtendedReal::infinite();
  const Matrix& rm = r.matrix();
  const double self = (rm * mat_log(r, opt.base, opt.tol).matrix()).trace();
  const double cross = (rm * mat_log(s, opt.base, opt.tol).matrix()).trace();
  return ExtendedReal::finite(std::max(self - cross, 0.0));
}

// 1 / (1 + N(rho || sigma)); exactly 0 when the divergence is infinite.
inline double representativeness(const DensityMatrix& rho, const DensityMatrix& sigma,
                                 const MeasureOptions& opt = {}) {
  const ExtendedReal n = relative_entropy(rho, sigma, opt);
  if (n.is_infinite()) return 0.0;
  return 1.0 / (1.0 + n.to_double());
}

inline double von_neumann_entropy(const DensityMatrix& rho, const MeasureOptions& opt = {}) {
  const EigenSystem es = eigh(detail::normalized_op(rho));
  const double cut = support_threshold(es, opt.tol);
  double h = 0.0;
  for (double l : es.values) {
    if (l > cut && l > 0.0) h -= l * log_in(opt.base, l);
  }
  return std::max(h, 0.0);
}

inline bool precedes(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerance& tol = {}) {
  return supp_leq(rho, sigma, tol);
}

inline bool equivalent(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerance& tol = {}) {
  return precedes(rho, sigma, tol) && precedes(sigma, rho, tol);
}

// Graded hyponymy: each direction counts when its representativeness exceeds
// theta. theta = 0 is the pure support criterion; any theta > 0 can break
// transitivity.
inline EntailmentVerdict classify(const DensityMatrix& rho, const DensityMatrix& sigma,
                                  double theta = 0.0, const MeasureOptions& opt = {}) {
  if (!(theta >= 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in [0, 1)");
  EntailmentVerdict v;
  v.forward = representativeness(rho, sigma, opt);
  v.backward = representativeness(sigma, rho, opt);
  const bool fwd = v.forward > theta;
  const bool bwd = v.backward > theta;
  if (fwd && bwd) v.relation = Relation::kEquivalent;
  else if (fwd) v.relation = Relation::kHyponym;
  else if (bwd) v.relation = Relation::kHypernym;
  else v.relation = Relation::kIncomparable;
  return v;
}

}  // namespace densem
