#include <gtest/gtest.h>

#include <cmath>

#include "ddvv/ddvv.hpp"
#include "ddvv/random.hpp"
#include "oracles.hpp"

using namespace ddvv;

namespace {

const SymMatrix kSwap = SymMatrix::from_rows({{0, 1}, {1, 0}});
const SymMatrix kFlip = SymMatrix::from_rows({{1, 0}, {0, -1}});

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

// Brute-force evaluation of the coefficient-form sums.
std::pair<double, double> coefficient_oracle(const std::vector<oracle::Dense>& h) {
  const std::size_t n = h[0].size();
  const std::size_t m = h.size();
  double lhs = 0.0;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i >= j) continue;
        lhs += std::pow(h[r][i][i] - h[r][j][j], 2) + 2.0 * double(n) * std::pow(h[r][i][j], 2);
      }
  double inner = 0.0;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = r + 1; s < m; ++s) {
      const auto c = oracle::comm(h[r], h[s]);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) inner += c[i][j] * c[i][j];
    }
  return {lhs, 2.0 * double(n) * std::sqrt(inner)};
}

}  // namespace

TEST(InequalityReport, Conventions) {
  const auto zero = InequalityReport::make(0.0, 0.0);
  EXPECT_EQ(zero.ratio, 0.0);
  EXPECT_TRUE(zero.pass);
  const auto eq = InequalityReport::make(16.0, 16.0);
  EXPECT_EQ(eq.ratio, 1.0);
  EXPECT_EQ(eq.margin, 0.0);
  EXPECT_TRUE(eq.pass);
  EXPECT_FALSE(InequalityReport::make(1.0, 1.0 + 1e-9, 1e-10).pass);
  EXPECT_TRUE(InequalityReport::make(1.0, 1.0 + 1e-11, 1e-10).pass);
}

TEST(MatrixForm, EqualityPair) {
  const auto r = evaluate_matrix_form(MatrixTuple{kSwap, kFlip});
  EXPECT_EQ(r.lhs, 16.0);
  EXPECT_EQ(r.rhs, 16.0);
  EXPECT_NEAR(r.ratio, 1.0, 1e-12);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(commutator(kSwap, kFlip).squared_norm(), 8.0);
}

TEST(MatrixForm, SingleMatrixAndCommutingTuple) {
  Rng rng(1);
  const auto single = evaluate_matrix_form(MatrixTuple{gaussian_symmetric(4, rng)});
  EXPECT_EQ(single.rhs, 0.0);
  EXPECT_TRUE(single.pass);
  const auto diag = evaluate_matrix_form(MatrixTuple{SymMatrix::diagonal(std::vector<double>{1, 2, 3}),
                                                     SymMatrix::diagonal(std::vector<double>{-1, 0, 5})});
  EXPECT_EQ(diag.rhs, 0.0);
}

TEST(MatrixForm, MatchesBruteForceAndScalesQuartically) {
  Rng rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const std::size_t m = 2 + trial % 4;
    const MatrixTuple t = gaussian_tuple(n, m, rng);
    std::vector<oracle::Dense> dense;
    for (const auto& a : t) dense.push_back(oracle::from(a));
    double total = 0.0;
    for (const auto& a : dense) total += oracle::norm2(a);
    const auto r = evaluate_matrix_form(t);
    EXPECT_LE(rel(r.lhs, total * total), 1e-13);
    EXPECT_LE(rel(r.rhs, 2.0 * oracle::commutator_sum(dense)), 1e-12);
    EXPECT_TRUE(r.pass);

    const double lambda = 0.1 + trial * 0.01;
    const auto s = evaluate_matrix_form(t.scaled(lambda));
    EXPECT_LE(rel(s.lhs, r.lhs * std::pow(lambda, 4)), 1e-12);
    EXPECT_LE(rel(s.rhs, r.rhs * std::pow(lambda, 4)), 1e-12);
    EXPECT_LE(std::abs(s.ratio - r.ratio), 1e-12);
  }
}

TEST(CoefficientForm, EqualityPair) {
  const auto r = evaluate_coefficient_form(SecondFundamentalForm{0.0, MatrixTuple{kSwap, kFlip}});
  const auto [lhs, rhs] = coefficient_oracle({oracle::from(kSwap), oracle::from(kFlip)});
  EXPECT_EQ(lhs, 8.0);
  EXPECT_EQ(rhs, 8.0);
  EXPECT_EQ(r.lhs, lhs);
  EXPECT_EQ(r.rhs, rhs);
  EXPECT_NEAR(r.ratio, 1.0, 1e-12);
  EXPECT_TRUE(r.pass);
}

TEST(CoefficientForm, ZeroAndSingleDirection) {
  const auto z = evaluate_coefficient_form(SecondFundamentalForm{0.0, MatrixTuple::zeros(3, 2)});
  EXPECT_EQ(z.lhs, 0.0);
  EXPECT_EQ(z.rhs, 0.0);
  EXPECT_TRUE(z.pass);
  Rng rng(3);
  const auto one = evaluate_coefficient_form(
      SecondFundamentalForm{0.0, MatrixTuple{traceless_project(gaussian_symmetric(3, rng))}});
  EXPECT_EQ(one.rhs, 0.0);
}

TEST(CoefficientForm, RejectsTracefulSlices) {
  EXPECT_THROW(evaluate_coefficient_form(SecondFundamentalForm{0.0, MatrixTuple{SymMatrix::identity(2)}}),
               PreconditionError);
}

TEST(CoefficientForm, CrossFormConsistency) {
  Rng rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const std::size_t m = 2 + (trial / 4) % 4;
    const MatrixTuple t = traceless_parts(gaussian_tuple(n, m, rng));
    const auto c = evaluate_coefficient_form(SecondFundamentalForm{0.0, t});
    const auto mf = evaluate_matrix_form(t);
    const double nd = static_cast<double>(n);
    EXPECT_EQ(c.pass, mf.pass);
    EXPECT_LE(rel(c.lhs, nd * t.squared_norm()), 1e-10);
    EXPECT_LE(rel(c.rhs * c.rhs, 2.0 * nd * nd * commutator_sum(t)), 1e-10);
    std::vector<oracle::Dense> dense;
    for (const auto& a : t) dense.push_back(oracle::from(a));
    const auto [lhs, rhs] = coefficient_oracle(dense);
    EXPECT_LE(rel(c.lhs, lhs), 1e-12);
    EXPECT_LE(rel(c.rhs, rhs), 1e-12);
  }
}

TEST(GeometricQuantities, TotallyUmbilical) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const std::size_t m = 1 + trial % 4;
    std::vector<SymMatrix> h;
    double sum_sq = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      const double lambda = standard_normal(rng);
      sum_sq += lambda * lambda;
      h.push_back(SymMatrix::identity(n) * lambda);
    }
    const double c = standard_normal(rng);
    const SecondFundamentalForm form{c, MatrixTuple(h)};
    const auto g = geometric_quantities(form);
    EXPECT_EQ(g.rho_perp, 0.0);
    EXPECT_NEAR(g.rho, c + sum_sq, 1e-12 * (1 + std::abs(c) + sum_sq));
    EXPECT_NEAR(g.h_mean_sq, sum_sq, 1e-12 * (1 + sum_sq));
    EXPECT_NEAR(g.rho + g.rho_perp, g.h_mean_sq + c, 1e-12 * (1 + std::abs(c) + sum_sq));
    EXPECT_TRUE(check_conjecture1(form).pass);
  }
}

TEST(GeometricQuantities, ZeroForm) {
  const auto g = geometric_quantities(SecondFundamentalForm{0.7, MatrixTuple::zeros(3, 2)});
  EXPECT_DOUBLE_EQ(g.rho, 0.7);
  EXPECT_EQ(g.rho_perp, 0.0);
  EXPECT_EQ(g.h_mean_sq, 0.0);
  const auto r = check_conjecture1(SecondFundamentalForm{1.0, MatrixTuple::zeros(3, 2)});
  EXPECT_DOUBLE_EQ(r.lhs, 1.0);
  EXPECT_DOUBLE_EQ(r.rhs, 1.0);
  EXPECT_TRUE(r.pass);
}

TEST(GeometricQuantities, TracelessEqualityConfiguration) {
  const auto g = geometric_quantities(SecondFundamentalForm{0.0, MatrixTuple{kSwap, kFlip}});
  // Gauss: R_1221 = sum_r (h_11 h_22 - h_12^2) = -1 + -1; Ricci: [h1,h2]_12 = -2.
  EXPECT_NEAR(g.rho, -2.0, 1e-15);
  EXPECT_NEAR(g.rho_perp, 2.0, 1e-15);
  EXPECT_EQ(g.h_mean_sq, 0.0);
  EXPECT_NEAR(g.rho + g.rho_perp, g.h_mean_sq, 1e-12);
}

TEST(GeometricQuantities, RequiresTwoDimensions) {
  EXPECT_THROW(geometric_quantities(SecondFundamentalForm{0.0, MatrixTuple::zeros(1, 2)}), PreconditionError);
}

TEST(GeometricQuantities, MatchesFormulaByIndependentSums) {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const std::size_t m = 1 + trial % 4;
    const MatrixTuple h = gaussian_tuple(n, m, rng);
    const double c = standard_normal(rng);
    const auto g = geometric_quantities(SecondFundamentalForm{c, h});
    // rho = c + |H|^2 - sum ||traceless h||^2 / (n(n-1)).
    const double nd = static_cast<double>(n);
    double mean_sq = 0.0;
    for (const auto& a : h) mean_sq += std::pow(a.trace() / nd, 2);
    const double tl = traceless_parts(h).squared_norm();
    EXPECT_NEAR(g.rho, c + mean_sq - tl / (nd * (nd - 1)), 1e-12 * (1 + std::abs(c) + h.squared_norm()));
    EXPECT_NEAR(g.h_mean_sq, mean_sq, 1e-13 * (1 + mean_sq));
    EXPECT_GE(g.rho_perp, 0.0);
    if (m == 1) {
      EXPECT_EQ(g.rho_perp, 0.0);
    }
    const double expected_perp = 2.0 / (nd * (nd - 1)) * std::sqrt(0.5 * commutator_sum(h));
    EXPECT_NEAR(g.rho_perp, expected_perp, 1e-12 * (1 + expected_perp));
  }
}

TEST(Conjecture1, FuzzAndEquivalenceWithMatrixForm) {
  Rng rng(7);
  for (int trial = 0; trial < 10000; ++trial) {
    const MatrixTuple h = gaussian_tuple(3, 3, rng);
    const SecondFundamentalForm form{standard_normal(rng), h};
    const auto r = check_conjecture1(form);
    ASSERT_TRUE(r.pass) << "trial " << trial;
    ASSERT_EQ(r.pass, evaluate_matrix_form(traceless_parts(h)).pass);
  }
}
