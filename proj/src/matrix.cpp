#include "frobreal/matrix.hpp"

#include <stdexcept>

#include "frobreal/errors.hpp"

namespace frobreal {

Matrix::Matrix(std::size_t rows, std::size_t cols, const FieldSpec& field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::identity(std::size_t n, const FieldSpec& field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix shape mismatch");
  Matrix out(rows_, other.cols_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        if (!other(k, j).is_zero()) out(i, j) += a * other(k, j);
    }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
}

std::vector<std::size_t> Matrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t pick = row;
    while (pick < rows_ && (*this)(pick, col).is_zero()) ++pick;
    if (pick == rows_) continue;
    if (pick != row)
      for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(pick, j), (*this)(row, j));
    Scalar inv = (*this)(row, col).inverse();
    for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || (*this)(r, col).is_zero()) continue;
      Scalar factor = (*this)(r, col);
      for (std::size_t j = col; j < cols_; ++j)
        if (!(*this)(row, j).is_zero()) (*this)(r, j) -= factor * (*this)(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t Matrix::rank() const {
  Matrix copy = *this;
  return copy.rref().size();
}

Scalar Matrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  Matrix a = *this;
  Scalar det = Scalar::one(field_);
  for (std::size_t col = 0; col < cols_; ++col) {
    std::size_t pick = col;
    while (pick < rows_ && a(pick, col).is_zero()) ++pick;
    if (pick == rows_) return Scalar::zero(field_);
    if (pick != col) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(a(pick, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    Scalar inv = a(col, col).inverse();
    for (std::size_t r = col + 1; r < rows_; ++r) {
      if (a(r, col).is_zero()) continue;
      Scalar factor = a(r, col) * inv;
      for (std::size_t j = col; j < cols_; ++j) a(r, j) -= factor * a(col, j);
    }
  }
  return det;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
  auto x = solve(identity(rows_, field_));
  if (!x) throw DegenerateError("matrix is singular");
  return *x;
}

std::vector<std::vector<Scalar>> Matrix::null_space() const {
  Matrix a = *this;
  auto pivots = a.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols_, Scalar::zero(field_));
    v[free] = Scalar::one(field_);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Scalar>> Matrix::solve(const std::vector<Scalar>& rhs) const {
  Matrix b(rows_, 1, field_);
  for (std::size_t i = 0; i < rows_; ++i) b(i, 0) = rhs.at(i);
  auto x = solve(b);
  if (!x) return std::nullopt;
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < cols_; ++i) out.push_back((*x)(i, 0));
  return out;
}

std::optional<Matrix> Matrix::solve(const Matrix& rhs) const {
  if (rhs.rows_ != rows_) throw std::invalid_argument("right-hand side shape mismatch");
  Matrix aug(rows_, cols_ + rhs.cols_, field_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < rhs.cols_; ++j) aug(i, cols_ + j) = rhs(i, j);
  }
  auto pivots = aug.rref();
  Matrix x(cols_, rhs.cols_, field_);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] >= cols_) return std::nullopt;
    for (std::size_t j = 0; j < rhs.cols_; ++j) x(pivots[r], j) = aug(r, cols_ + j);
  }
  return x;
}

}  // namespace frobreal
