#pragma once

#include "delzant/rational.hpp"

#include <cstddef>
#include <vector>

namespace delzant::lattice {

/// Small dense row-major matrix over an exact ring. Sizes here are desk
/// scale (n <= 6, N <= 20), so there is no attempt at blocking.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

/// Rows of the result are the given integer vectors.
IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

/// Exact determinant (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& m);

std::size_t rank(const RationalMatrix& m);

/// Column-style Hermite normal form: returns H = A*U with U unimodular, H
/// lower triangular in echelon sense (each pivot strictly below the previous
/// one), pivots positive and entries to the left of a pivot reduced into
/// [0, pivot). Zero columns are moved to the right. If `transform` is given
/// it receives U.
IntMatrix column_hermite_form(const IntMatrix& a, IntMatrix* transform = nullptr);

/// Elementary divisors d_1 | d_2 | ... of the nonzero part of the Smith normal
/// form, in order.
std::vector<Integer> elementary_divisors(const IntMatrix& a);

/// True when the columns of `basis` span a saturated sublattice, i.e. they
/// extend to a Z-basis of Z^n (all elementary divisors equal 1, full column
/// rank).
bool columns_saturated(const IntMatrix& basis);

/// Basis of ker(A) ∩ Z^n as the columns of an n x (n - rank A) matrix, in
/// column Hermite normal form so the result is canonical.
IntMatrix integer_kernel(const IntMatrix& a);

/// Solves the square system A x = b exactly; returns false if A is singular.
bool solve(const RationalMatrix& a, const RationalVector& b, RationalVector& x);

}  // namespace delzant::lattice
