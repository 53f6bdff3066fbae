#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "btpgl/matrix.hpp"
#include "btpgl/padic.hpp"

namespace btpgl {

/// A full-rank R-lattice in V = K^n, given by the n columns of a
/// nonsingular matrix in standard coordinates.
class LatticeBasis {
 public:
  LatticeBasis(PAdicContext ctx, Matrix columns);

  static LatticeBasis standard(const PAdicContext& ctx, std::size_t n);

  const PAdicContext& ctx() const { return ctx_; }
  std::size_t dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }

  /// The lattice s * L.
  LatticeBasis scaled(const Scalar& s) const;
  /// Same lattice when u is unimodular over R: columns become matrix * u.
  LatticeBasis rebased(const Matrix& u) const;
  /// Coordinates of the given V-vectors (columns) with respect to this basis.
  Matrix coordinates_of(const Matrix& vectors) const;

  friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;

 private:
  PAdicContext ctx_;
  Matrix matrix_;
};

/// A submodule N of an ambient lattice M, stored as an n x r matrix of
/// coordinates with respect to the ambient basis. Construction checks that
/// the coordinates are p-integral; splitness is tested by is_split().
class SplitSubmodule {
 public:
  SplitSubmodule(LatticeBasis ambient, Matrix coordinates);

  static SplitSubmodule zero(const LatticeBasis& ambient);
  static SplitSubmodule whole(const LatticeBasis& ambient);

  const LatticeBasis& ambient() const { return ambient_; }
  const PAdicContext& ctx() const { return ambient_.ctx(); }
  std::size_t rank() const { return coords_.cols(); }
  const Matrix& coordinates() const { return coords_; }
  /// Basis vectors in standard coordinates of V.
  Matrix vectors() const { return ambient_.matrix() * coords_; }

 private:
  LatticeBasis ambient_;
  Matrix coords_;
};

/// (C, D, B) with B = C * A * D, C in GL(n, R), D a permutation matrix and
/// B upper triangular with nondecreasing diagonal valuations, each diagonal
/// entry of minimal valuation in its row.
struct TriangularizationResult {
  Matrix c;
  Matrix d;
  Matrix b;
};

/// Valuation-pivoted triangularization of an integral square matrix. Pivots
/// are entries of minimal valuation in the remaining block, ties broken by
/// smallest (row, column).
TriangularizationResult triangularize(const PAdicContext& ctx, const Matrix& a);

/// Sorted exponents e_1 <= ... <= e_n such that t = U diag(p^e_i) W with
/// U, W in GL(n, R). `t` must be nonsingular (SingularTransition otherwise).
std::vector<std::int64_t> elementary_exponents(const PAdicContext& ctx, const Matrix& t);

/// Exponents k_1 <= ... <= k_n with ambient = sum p^{k_i} R w_i for some
/// basis w of `other`.
std::vector<std::int64_t> invariant_exponents(const LatticeBasis& ambient, const LatticeBasis& other);

/// True iff the reduction mod p of the coordinate matrix has full column rank.
bool is_split(const SplitSubmodule& n);

/// (span of `vectors`) intersected with the ambient lattice; `vectors` are
/// columns in standard coordinates of V and may be dependent.
SplitSubmodule saturate(const LatticeBasis& ambient, const Matrix& vectors);
/// As saturate(), with the input columns given in ambient coordinates.
SplitSubmodule saturate_coordinates(const LatticeBasis& ambient, const Matrix& coordinates);

/// Saturation of the K-intersection of the spans of `submodules`.
SplitSubmodule intersect_spans(const LatticeBasis& ambient, std::span<const SplitSubmodule> submodules);

/// L' with outer = inner (+) L'. The complement consists of basis vectors of
/// `outer`, chosen greedily in order whenever their reduction enlarges the
/// reduced span. Throws NotSplitInside unless inner is split in outer.
SplitSubmodule complete_to_complement(const SplitSubmodule& outer, const SplitSubmodule& inner);

/// Equality as R-submodules of the common ambient lattice.
bool same_module(const SplitSubmodule& a, const SplitSubmodule& b);

/// Coordinates of `n`'s basis with respect to the basis of `outer`, or
/// nullopt when n is not contained in outer's K-span.
std::optional<Matrix> coordinates_in(const SplitSubmodule& outer, const SplitSubmodule& n);

}  // namespace btpgl
