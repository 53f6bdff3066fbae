#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace btpgl {

/// Dense matrix over the residue field F_p, entries kept in [0, p).
/// p is at most 10^4, so products fit comfortably in 64 bits.
class FpMatrix {
 public:
  FpMatrix(std::int64_t p, std::size_t rows, std::size_t cols);

  std::int64_t p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t value);

  /// Reduced row echelon form; pivot columns are written to `pivots`.
  FpMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
  std::size_t rank() const;

  /// Columns form a basis of the right kernel {x : A x = 0}.
  FpMatrix kernel() const;
  /// Columns form a basis of the column space.
  FpMatrix column_basis() const;

  FpMatrix hconcat(const FpMatrix& other) const;
  FpMatrix transpose() const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  std::int64_t p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int64_t> data_;
};

std::int64_t inverse_mod(std::int64_t a, std::int64_t p);

/// Basis (as columns) of the intersection of the column spaces of `spaces`,
/// all of which must have the same number of rows. An empty input is invalid.
FpMatrix intersect_column_spaces(std::span<const FpMatrix> spaces);

}  // namespace btpgl
