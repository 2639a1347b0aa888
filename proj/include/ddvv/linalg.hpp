#pragma once

// Dense real matrices: norms, Frobenius inner products, commutators,
// traceless projection, vectorization, and the symmetric eigensolver / SVD
// contracts used by everything else.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ddvv/error.hpp"

namespace ddvv {

// Absolute floor added to every scaled tolerance.
inline constexpr double kAbsoluteFloor = 1e-14;

// Row-major dense matrix with finite entries.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) {
      throw DimensionError("matrix dimensions must be positive");
    }
  }

  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
      throw DimensionError("matrix dimensions must be positive");
    }
    if (data_.size() != rows * cols) {
      throw DimensionError("entry count " + std::to_string(data_.size()) +
                           " does not match " + std::to_string(rows) + "x" +
                           std::to_string(cols));
    }
    for (double v : data_) {
      if (!std::isfinite(v)) throw NumericalError("matrix entry is not finite");
    }
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<double> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
      if (row.size() != c) throw DimensionError("ragged row in matrix literal");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    return Matrix(r, c, std::move(entries));
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(std::span<const double> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  // Single basis element E_ij of an n x n space.
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n, n);
    m(i, j) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  double squared_norm() const noexcept {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return s;
  }
  double norm() const noexcept { return std::sqrt(squared_norm()); }

  // Largest entry magnitude.
  double max_abs() const noexcept {
    double s = 0.0;
    for (double v : data_) s = std::max(s, std::abs(v));
    return s;
  }

  double trace() const {
    if (!is_square()) throw DimensionError("trace of a non-square matrix");
    double t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  bool all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "addition");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "subtraction");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(double s) noexcept {
    for (double& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) { return a *= -1.0; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionError("cannot multiply " + a.shape() + " by " + b.shape());
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

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const Matrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError(std::string("shape mismatch in ") + what + ": " + shape() +
                           " vs " + o.shape());
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

// Square matrix stored symmetric; the constructor replaces the input by
// (a + a^T) / 2, so entries(i, j) == entries(j, i) holds bit-for-bit.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t n) : m_(n, n) {}

  explicit SymMatrix(const Matrix& a) : m_(symmetrized(a)) {}

  static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    return SymMatrix(Matrix::from_rows(rows));
  }
  static SymMatrix identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }
  static SymMatrix diagonal(std::span<const double> d) { return SymMatrix(Matrix::diagonal(d)); }

  std::size_t n() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  const Matrix& matrix() const noexcept { return m_; }
  operator const Matrix&() const noexcept { return m_; }  // NOLINT(google-explicit-constructor)

  double squared_norm() const noexcept { return m_.squared_norm(); }
  double norm() const noexcept { return m_.norm(); }
  double trace() const { return m_.trace(); }

  // Sets a_ij and a_ji together.
  void set(std::size_t i, std::size_t j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }

  // Largest off-diagonal magnitude.
  double max_abs_off_diagonal() const noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < n(); ++i)
      for (std::size_t j = 0; j < n(); ++j)
        if (i != j) s = std::max(s, std::abs(m_(i, j)));
    return s;
  }

  SymMatrix& operator*=(double s) noexcept {
    m_ *= s;
    return *this;
  }
  friend SymMatrix operator*(SymMatrix a, double s) { return a *= s; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

  friend bool operator==(const SymMatrix& a, const SymMatrix& b) { return a.m_ == b.m_; }

 private:
  static Matrix symmetrized(const Matrix& a) {
    if (!a.is_square()) throw DimensionError("symmetric matrix must be square, got " + a.shape());
    Matrix s(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      s(i, i) = a(i, i);
      for (std::size_t j = i + 1; j < a.cols(); ++j) {
        const double v = 0.5 * (a(i, j) + a(j, i));
        s(i, j) = v;
        s(j, i) = v;
      }
    }
    return s;
  }

  Matrix m_;
};

// Ordered list (A_1, ..., A_m) of symmetric n x n matrices, m >= 1.
class MatrixTuple {
 public:
  explicit MatrixTuple(std::vector<SymMatrix> matrices) : matrices_(std::move(matrices)) {
    if (matrices_.empty()) throw DimensionError("matrix tuple must hold at least one matrix");
    const std::size_t n = matrices_.front().n();
    for (std::size_t r = 0; r < matrices_.size(); ++r) {
      if (matrices_[r].n() != n) {
        throw DimensionError("matrix " + std::to_string(r) + " is " +
                             std::to_string(matrices_[r].n()) + "x" +
                             std::to_string(matrices_[r].n()) + ", expected " +
                             std::to_string(n) + "x" + std::to_string(n));
      }
    }
  }

  MatrixTuple(std::initializer_list<SymMatrix> matrices)
      : MatrixTuple(std::vector<SymMatrix>(matrices)) {}

  // m zero matrices of size n.
  static MatrixTuple zeros(std::size_t n, std::size_t m) {
    return MatrixTuple(std::vector<SymMatrix>(m, SymMatrix(n)));
  }

  std::size_t n() const noexcept { return matrices_.front().n(); }
  std::size_t m() const noexcept { return matrices_.size(); }
  std::size_t size() const noexcept { return matrices_.size(); }

  const SymMatrix& operator[](std::size_t r) const { return matrices_[r]; }
  SymMatrix& operator[](std::size_t r) { return matrices_[r]; }

  auto begin() const noexcept { return matrices_.begin(); }
  auto end() const noexcept { return matrices_.end(); }

  const std::vector<SymMatrix>& matrices() const noexcept { return matrices_; }

  // Sum of ||A_r||^2.
  double squared_norm() const noexcept {
    double s = 0.0;
    for (const auto& a : matrices_) s += a.squared_norm();
    return s;
  }

  MatrixTuple scaled(double s) const {
    MatrixTuple out = *this;
    for (auto& a : out.matrices_) a *= s;
    return out;
  }

  friend bool operator==(const MatrixTuple& a, const MatrixTuple& b) {
    return a.matrices_ == b.matrices_;
  }

 private:
  std::vector<SymMatrix> matrices_;
};

// AB - BA.
inline Matrix commutator(const Matrix& a, const Matrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionError("commutator needs square matrices of equal size, got " + a.shape() +
                         " and " + b.shape());
  }
  return a * b - b * a;
}

// ||AB - BA||^2 without materializing the commutator.
inline double commutator_squared_norm(const Matrix& a, const Matrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionError("commutator needs square matrices of equal size, got " + a.shape() +
                         " and " + b.shape());
  }
  const std::size_t n = a.rows();
  const auto pa = a.data();
  const auto pb = b.data();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double c = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        c += pa[i * n + k] * pb[k * n + j] - pb[i * n + k] * pa[k * n + j];
      }
      s += c * c;
    }
  return s;
}

// sum_ij a_ij b_ij.
inline double frobenius_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("inner product of " + a.shape() + " and " + b.shape());
  }
  const auto pa = a.data();
  const auto pb = b.data();
  double s = 0.0;
  for (std::size_t k = 0; k < pa.size(); ++k) s += pa[k] * pb[k];
  return s;
}

// a - (tr a / n) I.
inline SymMatrix traceless_project(const SymMatrix& a) {
  const double mean = a.trace() / static_cast<double>(a.n());
  Matrix out = a.matrix();
  for (std::size_t i = 0; i < a.n(); ++i) out(i, i) -= mean;
  return SymMatrix(out);
}

// Same matrix with its diagonal zeroed.
inline SymMatrix off_diagonal_part(const SymMatrix& a) {
  Matrix out = a.matrix();
  for (std::size_t i = 0; i < a.n(); ++i) out(i, i) = 0.0;
  return SymMatrix(out);
}

// Strict upper triangle (i < j) in lexicographic order.
inline std::vector<double> off_diagonal_vectorize(const SymMatrix& a) {
  std::vector<double> v;
  v.reserve(a.n() * (a.n() - 1) / 2);
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = i + 1; j < a.n(); ++j) v.push_back(a(i, j));
  return v;
}

namespace detail {

inline Eigen::MatrixXd to_eigen(const Matrix& a) {
  Eigen::MatrixXd e(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) e(i, j) = a(i, j);
  return e;
}

inline Matrix from_eigen(const Eigen::MatrixXd& e) {
  Matrix a(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  return a;
}

// Flips column signs so the first component with magnitude above `floor`
// is positive.
inline void fix_column_signs(Matrix& q, double floor = 1e-12) {
  for (std::size_t c = 0; c < q.cols(); ++c) {
    for (std::size_t r = 0; r < q.rows(); ++r) {
      const double v = q(r, c);
      if (std::abs(v) > floor) {
        if (v < 0.0) {
          for (std::size_t k = 0; k < q.rows(); ++k) q(k, c) = -q(k, c);
        }
        break;
      }
    }
  }
}

}  // namespace detail

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  Matrix eigenvectors;              // column k pairs with eigenvalues[k]
};

// Eigenvalues descending; a = Q diag(lambda) Q^T. Each eigenvector's first
// nonzero component is positive.
inline EigenDecomposition symmetric_eigh(const SymMatrix& a) {
  if (!a.matrix().all_finite()) throw NumericalError("symmetric_eigh: non-finite entries");
  const std::size_t n = a.n();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(detail::to_eigen(a.matrix()));
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  // Eigen sorts ascending; reverse.
  EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const auto src = static_cast<Eigen::Index>(n - 1 - k);
    out.eigenvalues[k] = solver.eigenvalues()(src);
    for (std::size_t r = 0; r < n; ++r) {
      out.eigenvectors(r, k) = solver.eigenvectors()(static_cast<Eigen::Index>(r), src);
    }
  }
  detail::fix_column_signs(out.eigenvectors);
  return out;
}

struct SingularValueDecomposition {
  Matrix q1;                        // left orthogonal factor
  std::vector<double> singular;     // s_1 >= ... >= s_n >= 0
  Matrix q2;                        // right orthogonal factor; x = q1 diag(s) q2
};

inline SingularValueDecomposition singular_value_decompose(const Matrix& x) {
  if (!x.is_square()) throw DimensionError("singular_value_decompose expects a square matrix");
  if (!x.all_finite()) throw NumericalError("singular_value_decompose: non-finite entries");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(detail::to_eigen(x),
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  std::vector<double> s(sv.data(), sv.data() + sv.size());
  return {detail::from_eigen(svd.matrixU()), std::move(s),
          detail::from_eigen(svd.matrixV().transpose())};
}

// ||Q^T Q - I||.
inline double orthogonality_defect(const Matrix& q) {
  Matrix g = q.transpose() * q;
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return g.norm();
}

}  // namespace ddvv
