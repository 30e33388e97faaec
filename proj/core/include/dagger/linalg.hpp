#pragma once

#include <optional>
#include <vector>

#include "dagger/scalars.hpp"

namespace dagger {

using Vector = std::vector<Rational>;

/// Dense row-major rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols_if_empty = 0);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows_if_empty = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Matrix transpose() const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Vector add(const Vector& a, const Vector& b);
Vector scale(const Vector& v, const Rational& s);
bool is_zero(const Vector& v);

/// Reduced row echelon form; pivots receives the pivot column of each nonzero row.
Matrix rref(Matrix m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const Matrix& m);
/// Basis of {x : m x = 0} over Q, as columns.
std::vector<Vector> nullspace(const Matrix& m);
/// Some x with m x = b, or nullopt.
std::optional<Vector> solve(const Matrix& m, const Vector& b);
std::optional<Matrix> inverse(const Matrix& m);

/// Scales a rational vector to a primitive integer vector (positive leading entry).
Vector primitive_integer(const Vector& v);

/// Integer column reduction A U = [H | 0] with U unimodular. H has full column
/// rank and spans the same lattice as the columns of A; the trailing columns of U
/// form a basis of ker(A) intersected with Z^n.
struct ColumnHermite {
  Matrix basis;        // rows(A) x rank
  Matrix transform;    // cols(A) x cols(A), unimodular
  std::size_t rank = 0;
};
ColumnHermite column_hermite(const Matrix& a);

/// LLL-reduced (delta = 3/4) basis of the lattice spanned by the linearly
/// independent columns of `basis`.
Matrix lll_reduce(const Matrix& basis);

}  // namespace dagger
