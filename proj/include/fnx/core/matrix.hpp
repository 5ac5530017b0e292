#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fnx/core/rational.hpp"

namespace fnx {

// Dense row-major matrix over Q. Small sizes only (desk-scale systems).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<RatVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const;
  RatVector col(std::size_t j) const;
  std::vector<RatVector> to_rows() const;

  Matrix transpose() const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  Matrix select_cols(const std::vector<std::size_t>& idx) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  bool is_zero() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Reduced row echelon form, pivots scanned left to right.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
Rational determinant(const Matrix& m);
// Columns form a basis of {x : m x = 0}; the basis is in reduced column
// echelon form (pivots top-down), hence canonical for the kernel.
Matrix kernel_basis(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
// Solves m x = b for square invertible m; nullopt when singular.
std::optional<RatVector> solve(const Matrix& m, const RatVector& b);

}  // namespace fnx
