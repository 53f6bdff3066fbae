#include "btpgl/fp_matrix.hpp"

#include <utility>

#include "btpgl/errors.hpp"

namespace btpgl {

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = ((a % p) + p) % p;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (r != 1) throw Error(ErrorCode::InvalidArgument, "element is not invertible mod p");
  return t < 0 ? t + p : t;
}

FpMatrix::FpMatrix(std::int64_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

void FpMatrix::set(std::size_t r, std::size_t c, std::int64_t value) {
  data_[r * cols_ + c] = ((value % p_) + p_) % p_;
}

FpMatrix FpMatrix::rref(std::vector<std::size_t>* pivots) const {
  FpMatrix m = *this;
  if (pivots) pivots->clear();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t sel = row;
    while (sel < rows_ && m(sel, col) == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < cols_; ++c) std::swap(m.data_[sel * cols_ + c], m.data_[row * cols_ + c]);
    }
    std::int64_t inv = inverse_mod(m(row, col), p_);
    for (std::size_t c = 0; c < cols_; ++c) m.data_[row * cols_ + c] = m(row, c) * inv % p_;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || m(r, col) == 0) continue;
      std::int64_t f = m(r, col);
      for (std::size_t c = 0; c < cols_; ++c) {
        m.data_[r * cols_ + c] = ((m(r, c) - f * m(row, c)) % p_ + p_) % p_;
      }
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return m;
}

std::size_t FpMatrix::rank() const {
  std::vector<std::size_t> pivots;
  rref(&pivots);
  return pivots.size();
}

FpMatrix FpMatrix::kernel() const {
  std::vector<std::size_t> pivots;
  FpMatrix e = rref(&pivots);
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  FpMatrix basis(p_, cols_, cols_ - pivots.size());
  std::size_t k = 0;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    basis.set(free, k, 1);
    for (std::size_t i = 0; i < pivots.size(); ++i) basis.set(pivots[i], k, -e(i, free));
    ++k;
  }
  return basis;
}

FpMatrix FpMatrix::column_basis() const {
  std::vector<std::size_t> pivots;
  rref(&pivots);
  FpMatrix basis(p_, rows_, pivots.size());
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    for (std::size_t r = 0; r < rows_; ++r) basis.set(r, k, (*this)(r, pivots[k]));
  }
  return basis;
}

FpMatrix FpMatrix::hconcat(const FpMatrix& other) const {
  if (other.rows_ != rows_ || other.p_ != p_) throw Error(ErrorCode::InvalidArgument, "hconcat shape mismatch");
  FpMatrix out(p_, rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.set(r, c, (*this)(r, c));
    for (std::size_t c = 0; c < other.cols_; ++c) out.set(r, cols_ + c, other(r, c));
  }
  return out;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix out(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.set(c, r, (*this)(r, c));
  return out;
}

FpMatrix intersect_column_spaces(std::span<const FpMatrix> spaces) {
  if (spaces.empty()) throw Error(ErrorCode::InvalidArgument, "intersection of no subspaces");
  FpMatrix acc = spaces.front().column_basis();
  for (std::size_t i = 1; i < spaces.size(); ++i) {
    if (acc.cols() == 0) break;
    FpMatrix other = spaces[i].column_basis();
    // acc*x = other*y  <=>  [acc | -other] (x;y) = 0
    FpMatrix neg(other.p(), other.rows(), other.cols());
    for (std::size_t r = 0; r < other.rows(); ++r)
      for (std::size_t c = 0; c < other.cols(); ++c) neg.set(r, c, -other(r, c));
    FpMatrix ker = acc.hconcat(neg).kernel();
    FpMatrix next(acc.p(), acc.rows(), ker.cols());
    for (std::size_t k = 0; k < ker.cols(); ++k) {
      for (std::size_t r = 0; r < acc.rows(); ++r) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < acc.cols(); ++j) s = (s + acc(r, j) * ker(j, k)) % acc.p();
        next.set(r, k, s);
      }
    }
    acc = next.column_basis();
  }
  return acc;
}

}  // namespace btpgl
