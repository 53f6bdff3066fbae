#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "btpgl/fp_matrix.hpp"
#include "btpgl/padic.hpp"
#include "btpgl/scalar.hpp"

namespace btpgl {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over K.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Scalar> entries);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const;
  Vector row(std::size_t r) const;
  std::vector<Vector> columns() const;

  Matrix transpose() const;
  Matrix hconcat(const Matrix& other) const;
  Matrix select_columns(std::span<const std::size_t> idx) const;
  Matrix column_range(std::size_t first, std::size_t count) const;
  Matrix scaled(const Scalar& s) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] -= factor * row[src]
  // Factors are taken by value: callers routinely pass entries of *this.
  void axpy_row(std::size_t dst, std::size_t src, Scalar factor);
  /// col[dst] -= factor * col[src]
  void axpy_col(std::size_t dst, std::size_t src, Scalar factor);
  void scale_row(std::size_t r, Scalar s);
  void scale_col(std::size_t c, Scalar s);

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Scalar determinant(const Matrix& a);
std::size_t rank(const Matrix& a);
/// Throws SingularTransition if `a` is singular.
Matrix inverse(const Matrix& a);
/// Solves a * x = b for square nonsingular a.
Matrix solve(const Matrix& a, const Matrix& b);
/// Columns form a basis of the right kernel of `a` over K.
Matrix kernel(const Matrix& a);
/// Solves a * x = b where `a` has independent columns; nullopt when some
/// column of `b` is outside the column span of `a`.
std::optional<Matrix> solve_in_column_span(const Matrix& a, const Matrix& b);
/// A maximal K-independent subset of the columns, in original order.
Matrix independent_columns(const Matrix& a);

Valuation min_valuation(const PAdicContext& ctx, const Matrix& a);
bool is_integral(const PAdicContext& ctx, const Matrix& a);
/// Entries in R and determinant a unit.
bool is_unimodular(const PAdicContext& ctx, const Matrix& a);
/// Entry-wise residue map; throws NonIntegralEntry on a non-integral entry.
FpMatrix reduce(const PAdicContext& ctx, const Matrix& a);

}  // namespace btpgl
