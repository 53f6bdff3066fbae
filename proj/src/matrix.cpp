#include "btpgl/matrix.hpp"

#include <algorithm>
#include <utility>

#include "btpgl/errors.hpp"

namespace btpgl {

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::InvalidArgument, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(std::span<const Scalar> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::InvalidArgument, "row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error(ErrorCode::InvalidArgument, "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

std::vector<Vector> Matrix::columns() const {
  std::vector<Vector> out;
  out.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::hconcat(const Matrix& other) const {
  if (other.rows_ != rows_) throw Error(ErrorCode::InvalidArgument, "hconcat row mismatch");
  Matrix m(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c) m(r, cols_ + c) = other(r, c);
  }
  return m;
}

Matrix Matrix::select_columns(std::span<const std::size_t> idx) const {
  Matrix m(rows_, idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t r = 0; r < rows_; ++r) m(r, k) = (*this)(r, idx[k]);
  return m;
}

Matrix Matrix::column_range(std::size_t first, std::size_t count) const {
  Matrix m(rows_, count);
  for (std::size_t k = 0; k < count; ++k)
    for (std::size_t r = 0; r < rows_; ++r) m(r, k) = (*this)(r, first + k);
  return m;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix m = *this;
  for (auto& x : m.data_) x *= s;
  return m;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void Matrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void Matrix::axpy_row(std::size_t dst, std::size_t src, Scalar factor) {
  if (factor.is_zero()) return;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (!(*this)(src, c).is_zero()) (*this)(dst, c) -= factor * (*this)(src, c);
  }
}

void Matrix::axpy_col(std::size_t dst, std::size_t src, Scalar factor) {
  if (factor.is_zero()) return;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (!(*this)(r, src).is_zero()) (*this)(r, dst) -= factor * (*this)(r, src);
  }
}

void Matrix::scale_row(std::size_t r, Scalar s) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) *= s;
}

void Matrix::scale_col(std::size_t c, Scalar s) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) *= s;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::InvalidArgument, "matrix product shape mismatch");
  Matrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) m(i, j) += aik * b(k, j);
      }
    }
  }
  return m;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols_ != v.size()) throw Error(ErrorCode::InvalidArgument, "matrix-vector shape mismatch");
  Vector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
  return out;
}

namespace {

// In-place reduced row echelon form over K; pivots by first nonzero entry.
std::vector<std::size_t> rref_in_place(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    m.swap_rows(sel, row);
    m.scale_row(row, Scalar(1) / m(row, col));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != row) m.axpy_row(r, row, m(r, col));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Scalar determinant(const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return Scalar(1);
  // Bareiss fraction-free elimination; every division below is exact.
  Matrix m = a;
  Scalar prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t sel = k + 1;
      while (sel < n && m(sel, k).is_zero()) ++sel;
      if (sel == n) return Scalar(0);
      m.swap_rows(sel, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

std::size_t rank(const Matrix& a) {
  Matrix m = a;
  return rref_in_place(m).size();
}

Matrix inverse(const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::InvalidArgument, "inverse of non-square matrix");
  return solve(a, Matrix::identity(a.rows()));
}

Matrix solve(const Matrix& a, const Matrix& b) {
  if (!a.is_square() || a.rows() != b.rows()) throw Error(ErrorCode::InvalidArgument, "solve shape mismatch");
  const std::size_t n = a.rows();
  Matrix aug = a.hconcat(b);
  auto pivots = rref_in_place(aug);
  if (pivots.size() < n || pivots.back() >= n) throw Error(ErrorCode::SingularTransition, "singular matrix");
  return aug.column_range(n, b.cols());
}

Matrix kernel(const Matrix& a) {
  Matrix m = a;
  auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix basis(a.cols(), a.cols() - pivots.size());
  std::size_t k = 0;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -m(i, free);
    ++k;
  }
  return basis;
}

std::optional<Matrix> solve_in_column_span(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::InvalidArgument, "solve shape mismatch");
  Matrix aug = a.hconcat(b);
  auto pivots = rref_in_place(aug);
  std::size_t in_a = 0;
  while (in_a < pivots.size() && pivots[in_a] < a.cols()) ++in_a;
  if (in_a != a.cols()) throw Error(ErrorCode::InvalidArgument, "columns are not independent");
  if (pivots.size() > a.cols()) return std::nullopt;
  Matrix x(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t c = 0; c < b.cols(); ++c) x(i, c) = aug(i, a.cols() + c);
  return x;
}

Matrix independent_columns(const Matrix& a) {
  Matrix m = a;
  auto pivots = rref_in_place(m);
  return a.select_columns(pivots);
}

Valuation min_valuation(const PAdicContext& ctx, const Matrix& a) {
  Valuation best = Valuation::infinity();
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) best = std::min(best, val(ctx, a(r, c)));
  return best;
}

bool is_integral(const PAdicContext& ctx, const Matrix& a) {
  return min_valuation(ctx, a) >= Valuation(0);
}

bool is_unimodular(const PAdicContext& ctx, const Matrix& a) {
  return a.is_square() && is_integral(ctx, a) && val(ctx, determinant(a)) == Valuation(0);
}

FpMatrix reduce(const PAdicContext& ctx, const Matrix& a) {
  FpMatrix out(ctx.p(), a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (val(ctx, a(r, c)) < Valuation(0)) {
        throw Error(ErrorCode::NonIntegralEntry, "entry " + a(r, c).to_string() + " is not p-integral");
      }
      out.set(r, c, residue(ctx, a(r, c)));
    }
  }
  return out;
}

}  // namespace btpgl
