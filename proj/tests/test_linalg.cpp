#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "ddvv/linalg.hpp"
#include "ddvv/random.hpp"
#include "oracles.hpp"

using namespace ddvv;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

}  // namespace

TEST(Commutator, SelfCommutatorVanishes) {
  Rng rng(1);
  const Matrix a = gaussian_matrix(4, rng);
  EXPECT_EQ(commutator(a, a).max_abs(), 0.0);
}

TEST(Commutator, NilpotentPair) {
  const Matrix x = Matrix::from_rows({{0, 1}, {0, 0}});
  const Matrix y = Matrix::from_rows({{0, 0}, {1, 0}});
  EXPECT_EQ(commutator(x, y), Matrix::from_rows({{1, 0}, {0, -1}}));
}

TEST(Commutator, DiagonalMatricesCommute) {
  const std::vector<double> d1{1, 2, 3};
  const std::vector<double> d2{-4, 0.5, 7};
  EXPECT_EQ(commutator(Matrix::diagonal(d1), Matrix::diagonal(d2)).max_abs(), 0.0);
}

TEST(Commutator, DimensionMismatchThrows) {
  EXPECT_THROW(commutator(Matrix(2, 2), Matrix(3, 3)), DimensionError);
  EXPECT_THROW(commutator(Matrix(2, 3), Matrix(2, 3)), DimensionError);
  EXPECT_THROW(commutator_squared_norm(Matrix(2, 2), Matrix(3, 3)), DimensionError);
}

TEST(Commutator, SymmetricInputsGiveExactlyAntisymmetric) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const Matrix c = commutator(gaussian_symmetric(n, rng), gaussian_symmetric(n, rng));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ASSERT_EQ(c(i, j), -c(j, i));
  }
}

TEST(Commutator, SquaredNormMatchesBruteForce) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const Matrix a = gaussian_matrix(n, rng);
    const Matrix b = gaussian_matrix(n, rng);
    const double expected = oracle::norm2(oracle::comm(oracle::from(a), oracle::from(b)));
    EXPECT_NEAR(commutator_squared_norm(a, b), expected, 1e-12 * (1.0 + expected));
    EXPECT_NEAR(commutator(a, b).squared_norm(), expected, 1e-12 * (1.0 + expected));
    EXPECT_GE(commutator_squared_norm(a, b), 0.0);
  }
}

TEST(FrobeniusInner, Examples) {
  EXPECT_EQ(frobenius_inner(Matrix::identity(2), Matrix::identity(2)), 2.0);
  EXPECT_EQ(frobenius_inner(Matrix::from_rows({{0, 1}, {1, 0}}), Matrix::from_rows({{1, 0}, {0, -1}})), 0.0);
  Rng rng(4);
  EXPECT_EQ(frobenius_inner(gaussian_matrix(3, rng), Matrix(3, 3)), 0.0);
  EXPECT_THROW(frobenius_inner(Matrix(2, 2), Matrix(2, 3)), DimensionError);
}

TEST(FrobeniusInner, SelfInnerIsSquaredNorm) {
  Rng rng(5);
  const Matrix a = gaussian_matrix(5, rng);
  EXPECT_DOUBLE_EQ(frobenius_inner(a, a), a.squared_norm());
  EXPECT_GE(frobenius_inner(a, a), 0.0);
}

TEST(BiInvariance, ConjugationByOrthogonal) {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const Matrix p = random_orthogonal(n, rng);
    const Matrix pt = p.transpose();
    const Matrix a = gaussian_matrix(n, rng);
    const Matrix b = gaussian_matrix(n, rng);
    const double tol = 1e-12 * static_cast<double>(n) * (a.norm() + b.norm());
    EXPECT_NEAR((p * a * pt).norm(), a.norm(), tol);
    const Matrix lhs = commutator(p * a * pt, p * b * pt);
    const Matrix rhs = p * commutator(a, b) * pt;
    EXPECT_LE(max_abs_diff(lhs, rhs), tol * (a.norm() + b.norm()));
  }
}

TEST(SymMatrix, SymmetrizesOnConstruction) {
  const SymMatrix s(Matrix::from_rows({{1, 2}, {4, 3}}));
  EXPECT_EQ(s(0, 1), 3.0);
  EXPECT_EQ(s(1, 0), 3.0);
  EXPECT_THROW(SymMatrix(Matrix(2, 3)), DimensionError);
}

TEST(Matrix, RejectsNonFiniteAndBadShapes) {
  EXPECT_THROW(Matrix(2, 2, {1, 2, 3}), DimensionError);
  EXPECT_THROW(Matrix(1, 1, {std::numeric_limits<double>::quiet_NaN()}), NumericalError);
  EXPECT_THROW(Matrix(1, 1, {std::numeric_limits<double>::infinity()}), NumericalError);
  EXPECT_THROW(Matrix(0, 2), DimensionError);
}

TEST(MatrixTuple, RequiresSharedDimension) {
  EXPECT_THROW(MatrixTuple({SymMatrix(2), SymMatrix(3)}), DimensionError);
  EXPECT_THROW(MatrixTuple(std::vector<SymMatrix>{}), DimensionError);
}

TEST(TracelessProject, Examples) {
  EXPECT_EQ(traceless_project(SymMatrix::identity(2)).matrix().max_abs(), 0.0);
  const std::vector<double> d{3, 1};
  EXPECT_EQ(traceless_project(SymMatrix::diagonal(d)), SymMatrix::diagonal(std::vector<double>{1, -1}));
  const SymMatrix tl = SymMatrix::from_rows({{1, 2}, {2, -1}});
  EXPECT_EQ(traceless_project(tl), tl);
}

TEST(TracelessProject, TraceVanishes) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const SymMatrix a = gaussian_symmetric(1 + trial % 8, rng);
    EXPECT_LE(std::abs(traceless_project(a).trace()), 1e-14 * a.norm() * 8 + kAbsoluteFloor);
  }
}

TEST(OffDiagonalVectorize, Examples) {
  const auto v = off_diagonal_vectorize(SymMatrix::from_rows({{0, 1}, {1, 0}}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], 1.0);
  const auto z = off_diagonal_vectorize(SymMatrix::diagonal(std::vector<double>{1, 2, 3}));
  EXPECT_EQ(z, std::vector<double>(3, 0.0));
  const auto ones = off_diagonal_vectorize(SymMatrix(Matrix(3, 3, std::vector<double>(9, 1.0))));
  EXPECT_EQ(ones, std::vector<double>(3, 1.0));
}

TEST(OffDiagonalVectorize, HalfNormForZeroDiagonal) {
  Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const SymMatrix a = off_diagonal_part(gaussian_symmetric(n, rng)) * (1.0 / std::sqrt(double(n)));
    double mu2 = 0.0;
    for (double x : off_diagonal_vectorize(a)) mu2 += x * x;
    EXPECT_NEAR(mu2, 0.5 * a.squared_norm(), 1e-13);
  }
}

TEST(SymmetricEigh, Examples) {
  const auto id = symmetric_eigh(SymMatrix::identity(2));
  EXPECT_DOUBLE_EQ(id.eigenvalues[0], 1.0);
  EXPECT_DOUBLE_EQ(id.eigenvalues[1], 1.0);
  const auto swap = symmetric_eigh(SymMatrix::from_rows({{0, 1}, {1, 0}}));
  EXPECT_NEAR(swap.eigenvalues[0], 1.0, 1e-15);
  EXPECT_NEAR(swap.eigenvalues[1], -1.0, 1e-15);
  const auto d = symmetric_eigh(SymMatrix::diagonal(std::vector<double>{3, 1}));
  EXPECT_DOUBLE_EQ(d.eigenvalues[0], 3.0);
  EXPECT_DOUBLE_EQ(d.eigenvalues[1], 1.0);
}

TEST(SymmetricEigh, ReconstructionOrderingAndSigns) {
  Rng rng(9);
  for (std::size_t n = 2; n <= 8; ++n) {
    const double nd = static_cast<double>(n);
    for (int trial = 0; trial < 1000; ++trial) {
      const SymMatrix a = gaussian_symmetric(n, rng);
      const auto e = symmetric_eigh(a);
      ASSERT_LE(orthogonality_defect(e.eigenvectors), 1e-12 * nd);
      const Matrix rec = e.eigenvectors * Matrix::diagonal(e.eigenvalues) * e.eigenvectors.transpose();
      ASSERT_LE((rec - a.matrix()).norm(), 1e-12 * nd * a.norm());
      for (std::size_t k = 1; k < n; ++k) ASSERT_GE(e.eigenvalues[k - 1], e.eigenvalues[k]);
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t r = 0;
        while (r < n && std::abs(e.eigenvectors(r, c)) <= 1e-12) ++r;
        ASSERT_LT(r, n);
        ASSERT_GT(e.eigenvectors(r, c), 0.0);
      }
    }
  }
}

TEST(SymmetricEigh, AgreesWithJacobiOracle) {
  Rng rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const SymMatrix a = gaussian_symmetric(2 + trial % 6, rng);
    const auto expected = oracle::jacobi_eigenvalues(oracle::from(a));
    const auto got = symmetric_eigh(a).eigenvalues;
    for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], expected[k], 1e-12 * (1 + a.norm()));
  }
}

TEST(SingularValueDecompose, Examples) {
  const auto id = singular_value_decompose(Matrix::identity(3));
  for (double s : id.singular) EXPECT_NEAR(s, 1.0, 1e-15);
  const auto nil = singular_value_decompose(Matrix::from_rows({{0, 1}, {0, 0}}));
  EXPECT_NEAR(nil.singular[0], 1.0, 1e-15);
  EXPECT_NEAR(nil.singular[1], 0.0, 1e-15);
  const auto neg = singular_value_decompose(Matrix::from_rows({{-2}}));
  EXPECT_NEAR(neg.singular[0], 2.0, 1e-15);
  EXPECT_THROW(singular_value_decompose(Matrix(2, 3)), DimensionError);
}

TEST(SingularValueDecompose, Reconstruction) {
  Rng rng(11);
  for (std::size_t n = 2; n <= 8; ++n) {
    const double nd = static_cast<double>(n);
    for (int trial = 0; trial < 1000; ++trial) {
      const Matrix x = gaussian_matrix(n, rng);
      const auto svd = singular_value_decompose(x);
      ASSERT_LE(orthogonality_defect(svd.q1), 1e-12 * nd);
      ASSERT_LE(orthogonality_defect(svd.q2), 1e-12 * nd);
      const Matrix rec = svd.q1 * Matrix::diagonal(svd.singular) * svd.q2;
      ASSERT_LE((rec - x).norm(), 1e-12 * nd * x.norm());
      for (std::size_t k = 1; k < n; ++k) ASSERT_GE(svd.singular[k - 1], svd.singular[k]);
      ASSERT_GE(svd.singular.back(), 0.0);
    }
  }
}
