#pragma once

// Seeded generators for valid oracle inputs. Every stream is derived from
// (seed, index) so results do not depend on how trials are scheduled.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ddvv/linalg.hpp"

namespace ddvv {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream for item `index` of a run seeded with `seed`.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

inline double standard_normal(Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

inline Matrix gaussian_matrix(std::size_t n, Rng& rng) {
  std::vector<double> v(n * n);
  for (double& x : v) x = standard_normal(rng);
  return Matrix(n, n, std::move(v));
}

// i.i.d. normal entries, then symmetrized.
inline SymMatrix gaussian_symmetric(std::size_t n, Rng& rng) { return SymMatrix(gaussian_matrix(n, rng)); }

inline MatrixTuple gaussian_tuple(std::size_t n, std::size_t m, Rng& rng) {
  std::vector<SymMatrix> v;
  v.reserve(m);
  for (std::size_t r = 0; r < m; ++r) v.push_back(gaussian_symmetric(n, rng));
  return MatrixTuple(std::move(v));
}

// Haar-distributed orthogonal matrix (Gram-Schmidt of a Gaussian matrix).
inline Matrix random_orthogonal(std::size_t n, Rng& rng) {
  Eigen::MatrixXd g = detail::to_eigen(gaussian_matrix(n, rng));
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  }
  return detail::from_eigen(q);
}

// Normal sample projected to sum zero and unit length.
inline std::vector<double> random_eta(std::size_t n, Rng& rng) {
  for (;;) {
    std::vector<double> eta(n);
    for (double& x : eta) x = standard_normal(rng);
    double mean = 0.0;
    for (double x : eta) mean += x;
    mean /= static_cast<double>(n);
    double sq = 0.0;
    for (double& x : eta) {
      x -= mean;
      sq += x * x;
    }
    if (sq < 1e-12) continue;
    const double inv = 1.0 / std::sqrt(sq);
    for (double& x : eta) x *= inv;
    // Re-centre after scaling so both constraints hold to rounding.
    mean = 0.0;
    for (double x : eta) mean += x;
    mean /= static_cast<double>(n);
    for (double& x : eta) x -= mean;
    return eta;
  }
}

// Nonnegative weights |N(0,1)|, occasionally zeroed to hit sparse patterns.
inline std::vector<double> random_weights(std::size_t count, Rng& rng) {
  std::vector<double> w(count);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& x : w) {
    x = std::abs(standard_normal(rng));
    if (u(rng) < 0.1) x = 0.0;
  }
  return w;
}

// Diagonal matrix of unit Frobenius norm with normal entries.
inline SymMatrix random_unit_diagonal(std::size_t n, Rng& rng) {
  std::vector<double> d(n);
  double sq = 0.0;
  do {
    sq = 0.0;
    for (double& x : d) {
      x = standard_normal(rng);
      sq += x * x;
    }
  } while (sq < 1e-12);
  const double inv = 1.0 / std::sqrt(sq);
  for (double& x : d) x *= inv;
  return SymMatrix::diagonal(d);
}

// Unit-norm n x n matrix with normal entries.
inline Matrix random_unit_matrix(std::size_t n, Rng& rng) {
  Matrix y = gaussian_matrix(n, rng);
  y *= 1.0 / y.norm();
  return y;
}

// `count` symmetric matrices, pairwise Frobenius-orthogonal, with random
// norms sorted descending. With zero_diagonal the matrices have zero
// diagonal; count must not exceed the dimension of the chosen space.
inline MatrixTuple orthogonal_tuple(std::size_t n, std::size_t count, Rng& rng,
                                    bool zero_diagonal = false) {
  const std::size_t dim = zero_diagonal ? n * (n - 1) / 2 : n * (n + 1) / 2;
  if (count > dim) {
    throw PreconditionError("cannot fit " + std::to_string(count) +
                            " orthogonal matrices in a space of dimension " + std::to_string(dim));
  }
  std::vector<Matrix> basis;
  basis.reserve(count);
  while (basis.size() < count) {
    SymMatrix s = gaussian_symmetric(n, rng);
    if (zero_diagonal) s = off_diagonal_part(s);
    Matrix v = s.matrix();
    // Two Gram-Schmidt passes.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= b * frobenius_inner(v, b);
    const double nv = v.norm();
    if (nv < 1e-8) continue;
    v *= 1.0 / nv;
    basis.push_back(SymMatrix(v).matrix());
  }
  std::vector<double> scales(count);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (double& s : scales) s = u(rng);
  std::sort(scales.begin(), scales.end(), std::greater<>());
  std::vector<SymMatrix> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.emplace_back(basis[k] * scales[k]);
  return MatrixTuple(std::move(out));
}

// Unit-norm X with largest singular value squared at most 1/2.
inline Matrix random_trivial_regime_matrix(std::size_t n, Rng& rng) {
  std::vector<double> s(n);
  for (double& x : s) x = std::abs(standard_normal(rng)) + 1e-3;
  auto normalize = [&] {
    double sq = 0.0;
    for (double x : s) sq += x * x;
    for (double& x : s) x /= std::sqrt(sq);
  };
  normalize();
  const double flat = 1.0 / std::sqrt(static_cast<double>(n));
  for (int it = 0; it < 64; ++it) {
    const double top = *std::max_element(s.begin(), s.end());
    if (top * top <= 0.5) break;
    for (double& x : s) x = 0.5 * (x + flat);
    normalize();
  }
  if (const double top = *std::max_element(s.begin(), s.end()); top * top > 0.5) {
    std::fill(s.begin(), s.end(), flat);
  }
  const Matrix x = random_orthogonal(n, rng) * Matrix::diagonal(s) * random_orthogonal(n, rng);
  return x * (1.0 / x.norm());
}

}  // namespace ddvv
