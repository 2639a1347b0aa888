#pragma once

#include <cmath>

namespace ddvv {

inline constexpr double kDefaultTol = 1e-10;

// Outcome of checking an inequality rhs <= lhs.
struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;   // rhs / lhs, 0 when both vanish
  double margin = 0.0;  // lhs - rhs
  bool pass = true;
  double tol = kDefaultTol;

  // pass <=> rhs <= lhs + tol*|lhs| + tol. For lhs >= 0 this is
  // rhs <= lhs*(1+tol) + tol.
  static InequalityReport make(double lhs, double rhs, double tol = kDefaultTol) {
    InequalityReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.tol = tol;
    r.margin = lhs - rhs;
    if (lhs == 0.0 && rhs == 0.0) {
      r.ratio = 0.0;
    } else if (lhs == 0.0) {
      r.ratio = rhs > 0.0 ? HUGE_VAL : -HUGE_VAL;
    } else {
      r.ratio = rhs / lhs;
    }
    r.pass = rhs <= lhs + tol * std::abs(lhs) + tol;
    return r;
  }
};

}  // namespace ddvv
