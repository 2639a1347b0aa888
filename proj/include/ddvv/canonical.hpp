#pragma once

// The O(n) x O(m) action on matrix tuples and the normal form it admits:
// A_1 diagonal, the tuple pairwise Frobenius-orthogonal, norms descending.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "ddvv/error.hpp"
#include "ddvv/linalg.hpp"

namespace ddvv {

// (p, q) with p in O(n), q in O(m).
class GroupElement {
 public:
  GroupElement(Matrix p, Matrix q) : p_(std::move(p)), q_(std::move(q)) {
    check_orthogonal(p_, "p");
    check_orthogonal(q_, "q");
  }

  static GroupElement identity(std::size_t n, std::size_t m) {
    return GroupElement(Matrix::identity(n), Matrix::identity(m));
  }

  const Matrix& p() const noexcept { return p_; }
  const Matrix& q() const noexcept { return q_; }
  std::size_t n() const noexcept { return p_.rows(); }
  std::size_t m() const noexcept { return q_.rows(); }

  // (p2 p1, q2 q1): acting by the result equals acting by *this after `first`.
  GroupElement after(const GroupElement& first) const {
    return GroupElement(p_ * first.p_, q_ * first.q_);
  }

 private:
  static void check_orthogonal(const Matrix& a, const char* name) {
    if (!a.is_square()) throw DimensionError(std::string(name) + " must be square");
    const double limit = 1e-12 * static_cast<double>(a.rows()) + kAbsoluteFloor;
    if (orthogonality_defect(a) > limit) {
      throw PreconditionError(std::string(name) + " is not orthogonal");
    }
  }

  Matrix p_;
  Matrix q_;
};

// (p, q) . (A_1..A_m) = (sum_j q_1j p A_j p^T, ..., sum_j q_mj p A_j p^T).
inline MatrixTuple apply_group_action(const GroupElement& g, const MatrixTuple& t) {
  if (g.n() != t.n() || g.m() != t.m()) {
    throw DimensionError("group element (" + std::to_string(g.n()) + ", " +
                         std::to_string(g.m()) + ") does not act on an (n=" +
                         std::to_string(t.n()) + ", m=" + std::to_string(t.m()) + ") tuple");
  }
  const std::size_t n = t.n();
  const std::size_t m = t.m();
  const Matrix pt = g.p().transpose();
  std::vector<Matrix> conj;
  conj.reserve(m);
  for (const auto& a : t) conj.push_back(g.p() * a.matrix() * pt);

  std::vector<SymMatrix> out;
  out.reserve(m);
  for (std::size_t r = 0; r < m; ++r) {
    Matrix acc(n, n);
    for (std::size_t j = 0; j < m; ++j) {
      const double w = g.q()(r, j);
      if (w != 0.0) acc += conj[j] * w;
    }
    out.emplace_back(acc);
  }
  return MatrixTuple(std::move(out));
}

// G_ab = <A_a, A_b>.
inline SymMatrix gram_matrix(const MatrixTuple& t) {
  const std::size_t m = t.m();
  Matrix g(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      const double v = frobenius_inner(t[a], t[b]);
      g(a, b) = v;
      g(b, a) = v;
    }
  return SymMatrix(g);
}

struct CanonicalForm {
  MatrixTuple tuple;
  GroupElement witness;  // tuple == apply_group_action(witness, input)
};

// Result of checking the normal-form properties on a tuple.
struct CanonicalDiagnostics {
  double first_off_diagonal = 0.0;   // max |(A_1)_ij|, i != j, over ||A_1||
  double worst_cross_inner = 0.0;    // max |<A_a,A_b>| / (||A_a|| ||A_b||)
  bool norms_descending = true;
  std::size_t significant = 0;       // matrices with norm above the zero threshold
  bool ok = true;
};

// Relative thresholds for a canonical form; matrices below zero_rel * max
// norm count as zero (orthogonal to everything).
struct CanonicalTolerances {
  double diagonal_rel = 1e-12;
  double orthogonal_rel = 1e-10;
  double descending_rel = 1e-12;
  double zero_rel = 1e-12;
};

inline CanonicalDiagnostics diagnose_canonical(const MatrixTuple& t,
                                               const CanonicalTolerances& tol = {}) {
  CanonicalDiagnostics d;
  const std::size_t n = t.n();
  const std::size_t m = t.m();
  std::vector<double> norms(m);
  double max_norm = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    norms[r] = t[r].norm();
    max_norm = std::max(max_norm, norms[r]);
  }
  const double zero = tol.zero_rel * max_norm;

  if (norms[0] > 0.0) d.first_off_diagonal = t[0].max_abs_off_diagonal() / norms[0];
  if (d.first_off_diagonal > tol.diagonal_rel) d.ok = false;

  for (std::size_t a = 0; a < m; ++a) {
    if (norms[a] > zero) ++d.significant;
    for (std::size_t b = a + 1; b < m; ++b) {
      if (norms[a] <= zero || norms[b] <= zero) continue;
      const double c = std::abs(frobenius_inner(t[a], t[b])) / (norms[a] * norms[b]);
      d.worst_cross_inner = std::max(d.worst_cross_inner, c);
    }
  }
  if (d.worst_cross_inner > tol.orthogonal_rel) d.ok = false;

  for (std::size_t r = 1; r < m; ++r) {
    if (norms[r] > norms[r - 1] * (1.0 + tol.descending_rel) + kAbsoluteFloor) {
      d.norms_descending = false;
    }
  }
  if (!d.norms_descending) d.ok = false;

  if (d.significant > n * (n + 1) / 2) d.ok = false;
  return d;
}

// Gram-diagonalization by q in O(m), then diagonalization of the new A_1 by
// p in O(n). Ties in norm are ordered by lexicographic comparison of the
// entries, larger first.
inline CanonicalForm canonicalize(const MatrixTuple& t) {
  const std::size_t n = t.n();
  const std::size_t m = t.m();
  if (t.squared_norm() == 0.0) throw PreconditionError("zero tuple has no canonical form");

  const EigenDecomposition ge = symmetric_eigh(gram_matrix(t));
  // Rows of q are Gram eigenvectors.
  Matrix q = ge.eigenvectors.transpose();
  const MatrixTuple mixed = apply_group_action(GroupElement(Matrix::identity(n), q), t);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> norms(m);
  for (std::size_t r = 0; r < m; ++r) norms[r] = mixed[r].norm();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (norms[a] != norms[b]) return norms[a] > norms[b];
    const auto da = mixed[a].matrix().data();
    const auto db = mixed[b].matrix().data();
    return std::lexicographical_compare(db.begin(), db.end(), da.begin(), da.end());
  });
  Matrix q_sorted(m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) q_sorted(r, c) = q(order[r], c);

  const SymMatrix& first = mixed[order[0]];
  const EigenDecomposition fe = symmetric_eigh(first);
  GroupElement witness(fe.eigenvectors.transpose(), std::move(q_sorted));
  MatrixTuple canonical = apply_group_action(witness, t);
  return CanonicalForm{std::move(canonical), std::move(witness)};
}

}  // namespace ddvv
