#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "frobreal/field.hpp"

namespace frobreal {

/// Dense row-major matrix over a FieldSpec with exact Gaussian elimination.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const FieldSpec& field);

  static Matrix identity(std::size_t n, const FieldSpec& field);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix operator*(const Matrix& other) const;
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::size_t rank() const;
  Scalar determinant() const;
  /// Throws DegenerateError when singular.
  Matrix inverse() const;
  /// Basis of {x : A x = 0}, one column vector per entry.
  std::vector<std::vector<Scalar>> null_space() const;
  /// Some x with A x = b, or nullopt when inconsistent.
  std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& rhs) const;
  /// Solves A X = B column by column; nullopt if any column is inconsistent.
  std::optional<Matrix> solve(const Matrix& rhs) const;

 private:
  // Reduces in place to reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref();

  std::size_t rows_;
  std::size_t cols_;
  FieldSpec field_;
  std::vector<Scalar> data_;
};

}  // namespace frobreal
