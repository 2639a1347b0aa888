#pragma once

// The commutator bound ||[X,Y]||^2 <= 2 ||X||^2 ||Y||^2 for real square
// matrices, studied through the operator T(Y) = [X^T, [X, Y]].

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ddvv/error.hpp"
#include "ddvv/lemmas.hpp"
#include "ddvv/linalg.hpp"
#include "ddvv/report.hpp"

namespace ddvv {

// Row-major vec: vec(Y)[i*n + j] = Y_ij.
inline std::vector<double> vectorize(const Matrix& y) {
  return std::vector<double>(y.data().begin(), y.data().end());
}

inline Matrix unvectorize(std::span<const double> v, std::size_t n) {
  if (v.size() != n * n) throw DimensionError("vector length is not n^2");
  return Matrix(n, n, std::vector<double>(v.begin(), v.end()));
}

// Row-major Kronecker product: vec(A Y B) = (A kron B^T) vec(Y).
inline Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

// T : Y -> [X^T, [X, Y]] as an n^2 x n^2 matrix in the row-major E_ij basis.
struct CommutatorOperator {
  std::size_t n;
  SymMatrix t_matrix;
  Matrix x;

  Matrix apply(const Matrix& y) const {
    if (y.rows() != n || y.cols() != n) throw DimensionError("operand does not match operator size");
    const std::size_t d = n * n;
    std::vector<double> out(d, 0.0);
    const auto v = y.data();
    const auto t = t_matrix.matrix().data();
    for (std::size_t r = 0; r < d; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) s += t[r * d + c] * v[c];
      out[r] = s;
    }
    return Matrix(n, n, std::move(out));
  }
};

// [X^T,[X,Y]] = X^T X Y - X^T Y X - X Y X^T + Y X X^T, so
// T = (X^T X) kron I - X^T kron X^T - X kron X + I kron (X X^T).
inline CommutatorOperator build_T_operator(const Matrix& x) {
  if (!x.is_square()) throw DimensionError("T operator needs a square X, got " + x.shape());
  const std::size_t n = x.rows();
  const Matrix xt = x.transpose();
  const Matrix id = Matrix::identity(n);
  Matrix t = kronecker(xt * x, id);
  t -= kronecker(xt, xt);
  t -= kronecker(x, x);
  t += kronecker(id, x * xt);
  return CommutatorOperator{n, SymMatrix(t), x};
}

struct BwSpectrum {
  double alpha = 0.0;  // largest eigenvalue of T
  Matrix eigvec;       // unit Frobenius norm, T(eigvec) = alpha eigvec
  std::vector<double> eigenvalues;  // full spectrum, descending
};

inline BwSpectrum bw_spectrum(const CommutatorOperator& op) {
  const EigenDecomposition e = symmetric_eigh(op.t_matrix);
  const std::size_t d = op.n * op.n;
  std::vector<double> top(d);
  for (std::size_t r = 0; r < d; ++r) top[r] = e.eigenvectors(r, 0);
  Matrix y = unvectorize(top, op.n);
  y *= 1.0 / y.norm();
  return BwSpectrum{e.eigenvalues.front(), std::move(y), e.eigenvalues};
}

// ||T(y) - alpha y|| with alpha the Rayleigh quotient of y.
struct EigenResidual {
  double alpha = 0.0;
  double residual = 0.0;
};

inline EigenResidual eigen_residual(const CommutatorOperator& op, const Matrix& y) {
  const double yy = y.squared_norm();
  if (yy == 0.0) throw PreconditionError("zero matrix is not an eigenvector");
  const Matrix ty = op.apply(y);
  const double alpha = frobenius_inner(y, ty) / yy;
  return {alpha, (ty - y * alpha).norm()};
}

// Given an eigenvector y of T with eigenvalue alpha > 0, Y1 = [X^T, Y^T]
// is a second eigenvector for alpha, orthogonal to y.
inline Matrix pair_eigenvector(const CommutatorOperator& op, const Matrix& y) {
  if (y.rows() != op.n || y.cols() != op.n) throw DimensionError("y does not match operator size");
  const EigenResidual er = eigen_residual(op, y);
  const double ynorm = y.norm();
  if (er.residual > 1e-8 * (1.0 + er.alpha) * ynorm) {
    throw PreconditionError("y is not an eigenvector of T (residual " + std::to_string(er.residual) +
                            ")");
  }
  if (er.alpha <= 1e-8) throw PreconditionError("eigenvalue is numerically zero; no pairing");
  Matrix y1 = commutator(op.x.transpose(), y.transpose());
  if (y1.norm() <= 1e-10 * op.x.norm() * ynorm) {
    throw NumericalError("paired eigenvector [X^T, Y^T] vanished numerically");
  }
  return y1;
}

struct SvdReduction {
  double norm_original = 0.0;  // ||[X, Y]||
  double norm_reduced = 0.0;   // ||Lambda B - C Lambda||
  bool agree = false;
};

// With X = Q1 Lambda Q2, B = Q2 Y Q2^T and C = Q1^T Y Q1:
// ||[X, Y]|| = ||Lambda B - C Lambda||.
inline SvdReduction svd_reduce_check(const Matrix& x, const Matrix& y) {
  if (!x.is_square() || !y.is_square() || x.rows() != y.rows()) {
    throw DimensionError("svd reduction needs square X, Y of equal size");
  }
  const auto svd = singular_value_decompose(x);
  const Matrix lambda = Matrix::diagonal(svd.singular);
  const Matrix b = svd.q2 * y * svd.q2.transpose();
  const Matrix c = svd.q1.transpose() * y * svd.q1;
  SvdReduction out;
  out.norm_original = commutator(x, y).norm();
  out.norm_reduced = (lambda * b - c * lambda).norm();
  const double scale = std::max({out.norm_original, out.norm_reduced, x.norm() * y.norm() * 1e-6});
  out.agree = std::abs(out.norm_original - out.norm_reduced) <= 1e-10 * scale + kAbsoluteFloor;
  return out;
}

namespace detail {

inline void require_unit(const Matrix& a, const char* name) {
  if (std::abs(a.norm() - 1.0) > 1e-12) throw PreconditionError(std::string(name) + " must have unit norm");
}

}  // namespace detail

// For unit X, Y whose X has s_1^2 <= 1/2: ||[X,Y]||^2 <= 2.
inline InequalityReport bw_trivial_case_check(const Matrix& x, const Matrix& y,
                                              double tol = kDefaultTol) {
  if (!x.is_square() || !y.is_square() || x.rows() != y.rows()) {
    throw DimensionError("bw_trivial_case_check needs square X, Y of equal size");
  }
  detail::require_unit(x, "x");
  detail::require_unit(y, "y");
  const double s1 = singular_value_decompose(x).singular.front();
  if (s1 * s1 > 0.5 + tol) throw PreconditionError("not in trivial regime");
  return InequalityReport::make(2.0, commutator_squared_norm(x, y), tol);
}

struct BwReport {
  InequalityReport sharp;  // 2 ||X||^2 ||Y||^2
  InequalityReport weak;   // 3 ||X||^2 ||Y||^2
};

inline BwReport bw_check(const Matrix& x, const Matrix& y, double tol = kDefaultTol) {
  const double rhs = commutator_squared_norm(x, y);
  const double xy = x.squared_norm() * y.squared_norm();
  return {InequalityReport::make(2.0 * xy, rhs, tol), InequalityReport::make(3.0 * xy, rhs, tol)};
}

// Arrowhead matrix from the reduced coordinates B, C of the large-s_1 case:
//   head   = sum_{i>=2} b_1i^2 + sum_{i>=1} c_i1^2
//   spoke_i = -(b_1i c_1i + b_i1 c_i1)
//   tail_i  = b_i1^2 + c_1i^2,  i = 2..n.
inline Arrowhead appendix_arrowhead(const Matrix& b, const Matrix& c) {
  if (!b.is_square() || !c.is_square() || b.rows() != c.rows() || b.rows() < 2) {
    throw DimensionError("appendix arrowhead needs square B, C of equal size n >= 2");
  }
  const std::size_t n = b.rows();
  Arrowhead a;
  a.head = c(0, 0) * c(0, 0);
  for (std::size_t i = 1; i < n; ++i) a.head += b(0, i) * b(0, i) + c(i, 0) * c(i, 0);
  for (std::size_t i = 1; i < n; ++i) {
    a.spoke.push_back(-(b(0, i) * c(0, i) + b(i, 0) * c(i, 0)));
    a.tail.push_back(b(i, 0) * b(i, 0) + c(0, i) * c(0, i));
  }
  return a;
}

struct AppendixArrowheadReport {
  double lambda_max = 0.0;
  double bound = 0.0;     // head + sum of tail entries
  bool pass = false;      // lambda_max <= bound (relative 1e-10)
  double direct = 0.0;    // det(yI - P) at y = bound + epsilon, by elimination
  double formula = 0.0;   // the same by the secular product
  bool agree = false;
  bool positive = false;  // both determinants > 0
};

// Spectral bound for the appendix arrowhead together with the determinant
// identity evaluated just above the bound.
inline AppendixArrowheadReport appendix_arrowhead_check(const Matrix& b, const Matrix& c,
                                                        double epsilon = 1e-3) {
  const Arrowhead a = appendix_arrowhead(b, c);
  AppendixArrowheadReport out;
  out.lambda_max = symmetric_eigh(a.to_matrix()).eigenvalues.front();
  out.bound = a.head;
  for (double t : a.tail) out.bound += t;
  out.pass = out.lambda_max <= out.bound + 1e-10 * out.bound + kAbsoluteFloor;

  const double y = out.bound + epsilon * std::max(1.0, out.bound);
  Matrix shifted = Matrix::identity(a.n()) * y - a.to_matrix().matrix();
  out.direct = detail::lu_determinant(shifted);
  out.formula = a.secular_determinant(y);
  out.agree = detail::relative_agree(out.direct, out.formula, 1e-9,
                                     kAbsoluteFloor * std::pow(y, static_cast<double>(a.n())));
  out.positive = out.direct > 0.0 && out.formula > 0.0;
  return out;
}

}  // namespace ddvv
