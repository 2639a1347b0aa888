#pragma once

// The normal scalar curvature inequality in its matrix, coefficient and
// geometric formulations.

#include <cmath>
#include <string>
#include <vector>

#include "ddvv/error.hpp"
#include "ddvv/linalg.hpp"
#include "ddvv/report.hpp"

namespace ddvv {

// Second fundamental form at a point: h^r_ij for r = 1..m, plus the
// curvature c of the ambient space form.
struct SecondFundamentalForm {
  double c = 0.0;
  MatrixTuple h;

  std::size_t n() const noexcept { return h.n(); }
  std::size_t m() const noexcept { return h.m(); }
};

// Sum over r < s of ||[A_r, A_s]||^2.
inline double commutator_sum(const MatrixTuple& t) {
  double s = 0.0;
  for (std::size_t r = 0; r < t.m(); ++r)
    for (std::size_t q = r + 1; q < t.m(); ++q) s += commutator_squared_norm(t[r], t[q]);
  return s;
}

// lhs = (sum ||A_r||^2)^2, rhs = 2 sum_{r<s} ||[A_r, A_s]||^2.
inline InequalityReport evaluate_matrix_form(const MatrixTuple& t, double tol = kDefaultTol) {
  const double total = t.squared_norm();
  return InequalityReport::make(total * total, 2.0 * commutator_sum(t), tol);
}

// The inequality written out in the coefficients h^r_ij of a traceless form.
inline InequalityReport evaluate_coefficient_form(const SecondFundamentalForm& form,
                                                  double tol = kDefaultTol) {
  const std::size_t n = form.n();
  const std::size_t m = form.m();
  const auto& h = form.h;
  for (std::size_t r = 0; r < m; ++r) {
    if (std::abs(h[r].trace()) > 1e-10 * h[r].norm() + kAbsoluteFloor) {
      throw PreconditionError("slice " + std::to_string(r) +
                              " is not traceless; apply traceless_project first");
    }
  }
  const double nd = static_cast<double>(n);

  double diag_part = 0.0;
  double off_part = 0.0;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = h[r](i, i) - h[r](j, j);
        diag_part += d * d;
        off_part += h[r](i, j) * h[r](i, j);
      }
  const double lhs = diag_part + 2.0 * nd * off_part;

  double inner = 0.0;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = r + 1; s < m; ++s)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          double v = 0.0;
          for (std::size_t k = 0; k < n; ++k) {
            v += h[r](i, k) * h[s](j, k) - h[s](i, k) * h[r](j, k);
          }
          inner += v * v;
        }
  const double rhs = 2.0 * nd * std::sqrt(inner);
  return InequalityReport::make(lhs, rhs, tol);
}

struct GeometricQuantities {
  double rho = 0.0;        // normalized scalar curvature
  double rho_perp = 0.0;   // normalized normal scalar curvature
  double h_mean_sq = 0.0;  // |H|^2
};

// From the full second fundamental form via the Gauss and Ricci equations:
//   R(e_i,e_j,e_j,e_i) = c + sum_r (h^r_ii h^r_jj - (h^r_ij)^2)
//   <R^perp(e_i,e_j) xi_r, xi_s> = ([h^r, h^s])_ij
inline GeometricQuantities geometric_quantities(const SecondFundamentalForm& form) {
  const std::size_t n = form.n();
  const std::size_t m = form.m();
  if (n < 2) throw PreconditionError("normalized scalar curvature needs n >= 2");
  const auto& h = form.h;
  const double nd = static_cast<double>(n);
  const double norm = 2.0 / (nd * (nd - 1.0));

  double sectional = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double k = form.c;
      for (std::size_t r = 0; r < m; ++r) k += h[r](i, i) * h[r](j, j) - h[r](i, j) * h[r](i, j);
      sectional += k;
    }

  double normal = 0.0;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = r + 1; s < m; ++s) {
      const Matrix rs = commutator(h[r], h[s]);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) normal += rs(i, j) * rs(i, j);
    }

  double mean_sq = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    const double hr = h[r].trace() / nd;
    mean_sq += hr * hr;
  }
  return {norm * sectional, norm * std::sqrt(normal), mean_sq};
}

// lhs = |H|^2 + c, rhs = rho + rho_perp.
inline InequalityReport check_conjecture1(const SecondFundamentalForm& form,
                                          double tol = kDefaultTol) {
  const GeometricQuantities g = geometric_quantities(form);
  return InequalityReport::make(g.h_mean_sq + form.c, g.rho + g.rho_perp, tol);
}

// Traceless parts of every slice.
inline MatrixTuple traceless_parts(const MatrixTuple& t) {
  std::vector<SymMatrix> out;
  out.reserve(t.m());
  for (const auto& a : t) out.push_back(traceless_project(a));
  return MatrixTuple(std::move(out));
}

}  // namespace ddvv
