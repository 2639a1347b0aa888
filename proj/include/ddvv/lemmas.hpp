#pragma once

// Numerical oracles for the auxiliary inequalities behind the DDVV proof:
// the weighted-difference lemma, the star-shaped arrowhead matrix and its
// spectral bound, the commutator estimate against a unit diagonal matrix,
// the off-diagonal mass bound, and the sharpened commutator remark.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "ddvv/error.hpp"
#include "ddvv/linalg.hpp"
#include "ddvv/report.hpp"

namespace ddvv {

// eta with sum eta_i = 0 and sum eta_i^2 = 1.
class EtaVector {
 public:
  explicit EtaVector(std::vector<double> eta, double tol = 1e-12) : eta_(std::move(eta)) {
    if (eta_.empty()) throw DimensionError("eta must be nonempty");
    double sum = 0.0;
    double sq = 0.0;
    for (double v : eta_) {
      if (!std::isfinite(v)) throw NumericalError("eta entry is not finite");
      sum += v;
      sq += v * v;
    }
    if (std::abs(sum) > tol) throw PreconditionError("eta does not sum to zero");
    if (std::abs(sq - 1.0) > tol) throw PreconditionError("eta is not a unit vector");
  }

  std::size_t size() const noexcept { return eta_.size(); }
  double operator[](std::size_t i) const { return eta_[i]; }
  const std::vector<double>& values() const noexcept { return eta_; }

 private:
  std::vector<double> eta_;
};

// Nonnegative weights r_ij for i < j, stored in lexicographic pair order.
class WeightSet {
 public:
  WeightSet(std::size_t n, std::vector<double> upper) : n_(n), r_(std::move(upper)) {
    if (r_.size() != n * (n - 1) / 2) {
      throw DimensionError("weight set for n=" + std::to_string(n) + " needs " +
                           std::to_string(n * (n - 1) / 2) + " values");
    }
    for (double v : r_) {
      if (!std::isfinite(v)) throw NumericalError("weight is not finite");
      if (v < 0.0) throw PreconditionError("weights must be nonnegative");
    }
  }

  std::size_t n() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return r_[index(i, j)];
  }
  const std::vector<double>& values() const noexcept { return r_; }

  double sum() const noexcept { return std::accumulate(r_.begin(), r_.end(), 0.0); }
  double max() const noexcept { return r_.empty() ? 0.0 : *std::max_element(r_.begin(), r_.end()); }

 private:
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t n_;
  std::vector<double> r_;
};

// lhs = sum r_ij + max r_ij, rhs = sum_{i<j} (eta_i - eta_j)^2 r_ij.
inline InequalityReport lemma1_check(const EtaVector& eta, const WeightSet& r,
                                     double tol = kDefaultTol) {
  if (eta.size() != r.n()) throw DimensionError("eta and weights disagree on n");
  double rhs = 0.0;
  for (std::size_t i = 0; i < eta.size(); ++i)
    for (std::size_t j = i + 1; j < eta.size(); ++j) {
      const double d = eta[i] - eta[j];
      rhs += d * d * r(i, j);
    }
  return InequalityReport::make(r.sum() + r.max(), rhs, tol);
}

// Symmetric arrowhead matrix: head entry, spokes z (first row/column) and
// diagonal tail d.
struct Arrowhead {
  double head = 0.0;
  std::vector<double> spoke;
  std::vector<double> tail;

  std::size_t n() const noexcept { return tail.size() + 1; }

  SymMatrix to_matrix() const {
    Matrix a(n(), n());
    a(0, 0) = head;
    for (std::size_t j = 0; j < tail.size(); ++j) {
      a(0, j + 1) = spoke[j];
      a(j + 1, 0) = spoke[j];
      a(j + 1, j + 1) = tail[j];
    }
    return SymMatrix(a);
  }

  // det(yI - P) = prod (y - d_j) * (y - head - sum z_j^2 / (y - d_j)).
  double secular_determinant(double y) const {
    double prod = 1.0;
    double secular = y - head;
    for (std::size_t j = 0; j < tail.size(); ++j) {
      const double gap = y - tail[j];
      if (gap == 0.0) throw PreconditionError("y sits on a pole of the determinant formula");
      prod *= gap;
      secular -= spoke[j] * spoke[j] / gap;
    }
    return prod * secular;
  }
};

// The star matrix with P_11 = sum s_j, P_1j = -s_j, P_jj = s_j.
class ArrowheadMatrix {
 public:
  explicit ArrowheadMatrix(std::vector<double> s) : s_(std::move(s)) {
    for (double v : s_) {
      if (!std::isfinite(v)) throw NumericalError("weight is not finite");
      if (v < 0.0) throw PreconditionError("arrowhead weights must be nonnegative");
    }
  }

  std::size_t n() const noexcept { return s_.size() + 1; }
  const std::vector<double>& weights() const noexcept { return s_; }

  double weight_sum() const noexcept { return std::accumulate(s_.begin(), s_.end(), 0.0); }
  double weight_max() const noexcept {
    return s_.empty() ? 0.0 : *std::max_element(s_.begin(), s_.end());
  }
  // sum s_j + max s_j.
  double bound() const noexcept { return weight_sum() + weight_max(); }

  Arrowhead general() const {
    Arrowhead a;
    a.head = weight_sum();
    a.tail = s_;
    a.spoke.resize(s_.size());
    std::transform(s_.begin(), s_.end(), a.spoke.begin(), [](double v) { return -v; });
    return a;
  }
  SymMatrix to_matrix() const { return general().to_matrix(); }

  // v^T P v = sum_j (v_1 - v_j)^2 s_j.
  double quadratic_form(std::span<const double> v) const {
    if (v.size() != n()) throw DimensionError("vector length does not match arrowhead size");
    double s = 0.0;
    for (std::size_t j = 0; j < s_.size(); ++j) {
      const double d = v[0] - v[j + 1];
      s += d * d * s_[j];
    }
    return s;
  }

 private:
  std::vector<double> s_;
};

inline ArrowheadMatrix arrowhead_build(std::vector<double> s) { return ArrowheadMatrix(std::move(s)); }

struct SpectralBound {
  double lambda_max = 0.0;
  double bound = 0.0;
  bool pass = true;
};

// Largest eigenvalue may not exceed sum s_j + max s_j.
inline SpectralBound arrowhead_spectral_bound(const ArrowheadMatrix& p) {
  SpectralBound out;
  out.lambda_max = symmetric_eigh(p.to_matrix()).eigenvalues.front();
  out.bound = p.bound();
  out.pass = out.lambda_max <= out.bound + 1e-10 * out.bound + kAbsoluteFloor;
  return out;
}

struct DeterminantComparison {
  double direct = 0.0;
  double formula = 0.0;
  bool agree = false;
};

namespace detail {

// Determinant by LU with partial pivoting.
inline double lu_determinant(const Matrix& a) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(to_eigen(a));
  return lu.determinant();
}

inline bool relative_agree(double a, double b, double rel, double floor) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), floor});
}

inline void require_off_pole(const std::vector<double>& poles, double y) {
  for (double p : poles) {
    if (std::abs(y - p) <= 8.0 * std::numeric_limits<double>::epsilon() *
                               std::max({1.0, std::abs(y), std::abs(p)})) {
      throw PreconditionError("y = " + std::to_string(y) +
                              " is a pole of the determinant formula");
    }
  }
}

}  // namespace detail

// det(yI - P) by elimination against
// prod (y - s_j) * (y - sum s_j - sum s_j^2 / (y - s_j)).
inline DeterminantComparison arrowhead_det_identity_check(const ArrowheadMatrix& p, double y) {
  const auto& s = p.weights();
  detail::require_off_pole(s, y);
  Matrix shifted = Matrix::identity(p.n()) * y - p.to_matrix().matrix();

  DeterminantComparison out;
  out.direct = detail::lu_determinant(shifted);

  double prod = 1.0;
  double secular = y - p.weight_sum();
  for (double sj : s) {
    prod *= y - sj;
    secular -= sj * sj / (y - sj);
  }
  out.formula = prod * secular;

  const double scale = std::pow(std::abs(y) + p.weight_sum(), static_cast<double>(p.n()));
  out.agree = detail::relative_agree(out.direct, out.formula, 1e-9, kAbsoluteFloor * scale);
  return out;
}

namespace detail {

inline void require_unit_diagonal(const SymMatrix& a) {
  if (a.max_abs_off_diagonal() > 1e-12 * a.norm()) {
    throw PreconditionError("a must be diagonal");
  }
  if (std::abs(a.norm() - 1.0) > 1e-12) throw PreconditionError("a must have unit norm");
}

// Pairwise |<A,B>| <= tol ||A|| ||B|| and norms descending within tol.
inline void require_orthogonal_descending(const MatrixTuple& rest, double tol) {
  for (std::size_t a = 0; a < rest.m(); ++a) {
    for (std::size_t b = a + 1; b < rest.m(); ++b) {
      const double inner = frobenius_inner(rest[a], rest[b]);
      if (std::abs(inner) > tol * rest[a].norm() * rest[b].norm() + kAbsoluteFloor) {
        throw PreconditionError("matrices " + std::to_string(a) + " and " + std::to_string(b) +
                                " are not orthogonal");
      }
    }
    if (a > 0 && rest[a].norm() > rest[a - 1].norm() * (1.0 + tol) + kAbsoluteFloor) {
      throw PreconditionError("norms are not descending at index " + std::to_string(a));
    }
  }
}

}  // namespace detail

// For a unit diagonal a and orthogonal A_2..A_m with descending norms:
//   sum ||[a, A_k]||^2 <= sum ||A_k||^2 + ||A_2||^2.
inline InequalityReport lemma2_check(const SymMatrix& a, const MatrixTuple& rest,
                                     double tol = kDefaultTol) {
  if (a.n() != rest.n()) throw DimensionError("a and the tuple disagree on n");
  detail::require_unit_diagonal(a);
  detail::require_orthogonal_descending(rest, tol);
  double rhs = 0.0;
  for (const auto& ak : rest) rhs += commutator_squared_norm(a, ak);
  return InequalityReport::make(rest.squared_norm() + rest[0].squared_norm(), rhs, tol);
}

struct RemarkReport {
  InequalityReport sharp;  // ||B||^2 + 2 ||B||_inf^2
  InequalityReport weak;   // 2 ||B||^2
};

// ||[a, b]||^2 against ||b||^2 + 2 max|b_ij|^2 (and the classical 2||b||^2).
inline RemarkReport remark_bound_check(const SymMatrix& a, const SymMatrix& b,
                                       double tol = kDefaultTol) {
  if (a.n() != b.n()) throw DimensionError("a and b disagree on n");
  detail::require_unit_diagonal(a);
  const double rhs = commutator_squared_norm(a, b);
  const double inf = b.matrix().max_abs();
  return {InequalityReport::make(b.squared_norm() + 2.0 * inf * inf, rhs, tol),
          InequalityReport::make(2.0 * b.squared_norm(), rhs, tol)};
}

// max over i != j of sum_k (A_k)_ij^2; 0 for n = 1.
inline double off_diagonal_mass(const MatrixTuple& t) {
  double best = 0.0;
  for (std::size_t i = 0; i < t.n(); ++i)
    for (std::size_t j = i + 1; j < t.n(); ++j) {
      double s = 0.0;
      for (const auto& a : t) s += a(i, j) * a(i, j);
      best = std::max(best, s);
    }
  return best;
}

// For zero-diagonal, orthogonal A_2..A_m with descending norms:
//   2 max_{i!=j} sum_k (A_k)_ij^2 <= ||A_2||^2.
inline InequalityReport delta_bound_check(const MatrixTuple& rest, double tol = kDefaultTol) {
  const std::size_t n = rest.n();
  double max_norm = 0.0;
  for (const auto& a : rest) max_norm = std::max(max_norm, a.norm());
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < rest.m(); ++k) {
    const auto& a = rest[k];
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(a(i, i)) > tol * a.norm() + kAbsoluteFloor) {
        throw PreconditionError("matrix " + std::to_string(k) + " has a nonzero diagonal");
      }
    }
    if (a.norm() > 1e-12 * max_norm) ++nonzero;
  }
  if (nonzero > n * (n - 1) / 2) {
    throw PreconditionError("too many matrices for orthogonality: " + std::to_string(nonzero) +
                            " nonzero zero-diagonal matrices exceed n(n-1)/2 = " +
                            std::to_string(n * (n - 1) / 2));
  }
  detail::require_orthogonal_descending(rest, tol);
  return InequalityReport::make(rest[0].squared_norm(), 2.0 * off_diagonal_mass(rest), tol);
}

// Normalizing v_k = vec(A_k)/|vec(A_k)| over the strict upper triangle,
// returns max over coordinates of sum_k (v_k)_c^2 (at most 1 for
// orthonormal v_k). Zero matrices are skipped.
inline double orthonormal_coordinate_mass(const MatrixTuple& t) {
  const std::size_t dim = t.n() * (t.n() - 1) / 2;
  std::vector<double> mass(dim, 0.0);
  for (const auto& a : t) {
    const auto v = off_diagonal_vectorize(a);
    double mu2 = 0.0;
    for (double x : v) mu2 += x * x;
    if (mu2 == 0.0) continue;
    for (std::size_t c = 0; c < dim; ++c) mass[c] += v[c] * v[c] / mu2;
  }
  return mass.empty() ? 0.0 : *std::max_element(mass.begin(), mass.end());
}

}  // namespace ddvv
