#include "btpgl/lattice.hpp"

#include <algorithm>
#include <utility>

#include "btpgl/dual_form.hpp"
#include "btpgl/errors.hpp"

namespace btpgl {

LatticeBasis::LatticeBasis(PAdicContext ctx, Matrix columns) : ctx_(ctx), matrix_(std::move(columns)) {
  if (!matrix_.is_square() || matrix_.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, "lattice basis must be a nonempty square matrix");
  }
  if (determinant(matrix_).is_zero()) throw Error(ErrorCode::InvalidArgument, "lattice basis is singular");
}

LatticeBasis LatticeBasis::standard(const PAdicContext& ctx, std::size_t n) {
  return LatticeBasis(ctx, Matrix::identity(n));
}

LatticeBasis LatticeBasis::scaled(const Scalar& s) const { return LatticeBasis(ctx_, matrix_.scaled(s)); }

LatticeBasis LatticeBasis::rebased(const Matrix& u) const { return LatticeBasis(ctx_, matrix_ * u); }

Matrix LatticeBasis::coordinates_of(const Matrix& vectors) const { return solve(matrix_, vectors); }

SplitSubmodule::SplitSubmodule(LatticeBasis ambient, Matrix coordinates)
    : ambient_(std::move(ambient)), coords_(std::move(coordinates)) {
  if (coords_.rows() != ambient_.dim()) {
    throw Error(ErrorCode::InvalidArgument, "submodule coordinates have the wrong length");
  }
  if (!is_integral(ambient_.ctx(), coords_)) {
    throw Error(ErrorCode::NonIntegralEntry, "submodule vectors must lie in the ambient lattice");
  }
}

SplitSubmodule SplitSubmodule::zero(const LatticeBasis& ambient) {
  return SplitSubmodule(ambient, Matrix(ambient.dim(), 0));
}

SplitSubmodule SplitSubmodule::whole(const LatticeBasis& ambient) {
  return SplitSubmodule(ambient, Matrix::identity(ambient.dim()));
}

TriangularizationResult triangularize(const PAdicContext& ctx, const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::InvalidArgument, "triangularize needs a square matrix");
  if (!is_integral(ctx, a)) throw Error(ErrorCode::NonIntegralEntry, "triangularize needs entries in R");
  const std::size_t n = a.rows();
  TriangularizationResult res{Matrix::identity(n), Matrix::identity(n), a};
  Matrix& b = res.b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    Valuation best = Valuation::infinity();
    for (std::size_t r = k; r < n; ++r) {
      for (std::size_t c = k; c < n; ++c) {
        Valuation v = val(ctx, b(r, c));
        if (v < best) {
          best = v;
          pr = r;
          pc = c;
        }
      }
    }
    if (best.is_infinite()) break;  // remaining block is zero
    b.swap_cols(k, pc);
    res.d.swap_cols(k, pc);
    b.swap_rows(k, pr);
    res.c.swap_rows(k, pr);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (b(r, k).is_zero()) continue;
      Scalar f = b(r, k) / b(k, k);
      b.axpy_row(r, k, f);
      res.c.axpy_row(r, k, f);
    }
  }
  return res;
}

std::vector<std::int64_t> elementary_exponents(const PAdicContext& ctx, const Matrix& t) {
  if (!t.is_square()) throw Error(ErrorCode::InvalidArgument, "elementary exponents need a square matrix");
  Valuation m = min_valuation(ctx, t);
  if (m.is_infinite()) throw Error(ErrorCode::SingularTransition, "zero transition matrix");
  const std::int64_t shift = m.value();
  auto tri = triangularize(ctx, t.scaled(ctx.uniformizer_power(-shift)));
  std::vector<std::int64_t> out;
  out.reserve(t.rows());
  for (std::size_t i = 0; i < t.rows(); ++i) {
    Valuation v = val(ctx, tri.b(i, i));
    if (v.is_infinite()) throw Error(ErrorCode::SingularTransition, "singular transition matrix");
    out.push_back(v.value() + shift);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> invariant_exponents(const LatticeBasis& ambient, const LatticeBasis& other) {
  if (!(ambient.ctx() == other.ctx()) || ambient.dim() != other.dim()) {
    throw Error(ErrorCode::InvalidArgument, "lattices live in different spaces");
  }
  // Columns of t are the ambient basis vectors in coordinates of `other`.
  return elementary_exponents(ambient.ctx(), solve(other.matrix(), ambient.matrix()));
}

bool is_split(const SplitSubmodule& n) {
  return reduce(n.ctx(), n.coordinates()).rank() == n.rank();
}

SplitSubmodule saturate_coordinates(const LatticeBasis& ambient, const Matrix& coordinates) {
  const PAdicContext& ctx = ambient.ctx();
  Matrix work = independent_columns(coordinates);
  const std::size_t r = work.cols();
  std::vector<bool> done(r, false);
  std::vector<std::size_t> order;
  order.reserve(r);
  // Each round picks the entry of minimal valuation among unfinished columns,
  // normalizes it to 1 and clears its row in the other unfinished columns.
  // The pivot rows then certify that the result is an R-basis of span ∩ M.
  for (std::size_t round = 0; round < r; ++round) {
    std::size_t pr = 0, pc = 0;
    Valuation best = Valuation::infinity();
    for (std::size_t row = 0; row < work.rows(); ++row) {
      for (std::size_t col = 0; col < r; ++col) {
        if (done[col]) continue;
        Valuation v = val(ctx, work(row, col));
        if (v < best) {
          best = v;
          pr = row;
          pc = col;
        }
      }
    }
    work.scale_col(pc, Scalar(1) / work(pr, pc));
    for (std::size_t col = 0; col < r; ++col) {
      if (done[col] || col == pc) continue;
      work.axpy_col(col, pc, work(pr, col));
    }
    done[pc] = true;
    order.push_back(pc);
  }
  return SplitSubmodule(ambient, work.select_columns(order));
}

SplitSubmodule saturate(const LatticeBasis& ambient, const Matrix& vectors) {
  return saturate_coordinates(ambient, ambient.coordinates_of(vectors));
}

SplitSubmodule intersect_spans(const LatticeBasis& ambient, std::span<const SplitSubmodule> submodules) {
  if (submodules.empty()) throw Error(ErrorCode::InvalidArgument, "intersection of no submodules");
  for (const auto& s : submodules) {
    if (!(s.ambient() == ambient)) throw Error(ErrorCode::InvalidArgument, "submodules of different lattices");
  }
  Matrix acc = independent_columns(submodules.front().coordinates());
  for (std::size_t i = 1; i < submodules.size() && acc.cols() > 0; ++i) {
    const Matrix& other = submodules[i].coordinates();
    // acc*x = other*y  <=>  [acc | -other] (x; y) = 0
    Matrix ker = kernel(acc.hconcat(other.scaled(Scalar(-1))));
    Matrix top(acc.cols(), ker.cols());
    for (std::size_t r = 0; r < acc.cols(); ++r)
      for (std::size_t c = 0; c < ker.cols(); ++c) top(r, c) = ker(r, c);
    acc = independent_columns(acc * top);
  }
  return saturate_coordinates(ambient, acc);
}

std::optional<Matrix> coordinates_in(const SplitSubmodule& outer, const SplitSubmodule& n) {
  if (!(outer.ambient() == n.ambient())) throw Error(ErrorCode::InvalidArgument, "submodules of different lattices");
  return solve_in_column_span(outer.coordinates(), n.coordinates());
}

SplitSubmodule complete_to_complement(const SplitSubmodule& outer, const SplitSubmodule& inner) {
  const PAdicContext& ctx = outer.ctx();
  auto y = coordinates_in(outer, inner);
  if (!y) throw Error(ErrorCode::NotSplitInside, "inner module is not inside the span of outer");
  if (!is_integral(ctx, *y)) throw Error(ErrorCode::NotSplitInside, "inner module is not contained in outer");
  FpMatrix span = reduce(ctx, *y);
  if (span.rank() != inner.rank()) throw Error(ErrorCode::NotSplitInside, "inner module is not split in outer");
  std::vector<std::size_t> chosen;
  std::size_t current = inner.rank();
  for (std::size_t j = 0; j < outer.rank() && current < outer.rank(); ++j) {
    FpMatrix unit(ctx.p(), outer.rank(), 1);
    unit.set(j, 0, 1);
    FpMatrix extended = span.hconcat(unit);
    if (extended.rank() > current) {
      span = std::move(extended);
      ++current;
      chosen.push_back(j);
    }
  }
  return SplitSubmodule(outer.ambient(), outer.coordinates().select_columns(chosen));
}

bool same_module(const SplitSubmodule& a, const SplitSubmodule& b) {
  if (a.rank() != b.rank()) return false;
  if (a.rank() == 0) return a.ambient() == b.ambient();
  auto ab = coordinates_in(a, b);
  auto ba = coordinates_in(b, a);
  return ab && ba && is_integral(a.ctx(), *ab) && is_integral(a.ctx(), *ba);
}

DualForm::DualForm(LatticeBasis ambient, Vector coefficients)
    : ambient_(std::move(ambient)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != ambient_.dim()) {
    throw Error(ErrorCode::InvalidArgument, "form has the wrong number of coefficients");
  }
  bool has_unit = false;
  for (const auto& a : coefficients_) {
    Valuation v = val(ambient_.ctx(), a);
    if (v < Valuation(0)) throw Error(ErrorCode::NonIntegralEntry, "form coefficient " + a.to_string() + " not in R");
    has_unit = has_unit || v == Valuation(0);
  }
  if (!has_unit) throw Error(ErrorCode::InvalidArgument, "form is not primitive (no unit coefficient)");
}

DualForm DualForm::primitive(LatticeBasis ambient, Vector coefficients) {
  const PAdicContext ctx = ambient.ctx();
  Valuation m = Valuation::infinity();
  for (const auto& a : coefficients) m = std::min(m, val(ctx, a));
  if (m.is_infinite()) throw Error(ErrorCode::InvalidArgument, "zero linear form");
  Scalar s = ctx.uniformizer_power(-m.value());
  for (auto& a : coefficients) a *= s;
  return DualForm(std::move(ambient), std::move(coefficients));
}

DualForm DualForm::times_unit(const Scalar& u) const {
  if (!is_unit(ctx(), u)) throw Error(ErrorCode::InvalidArgument, u.to_string() + " is not a unit");
  Vector out = coefficients_;
  for (auto& a : out) a *= u;
  return DualForm(ambient_, std::move(out));
}

DualForm transform_dual_form(const Matrix& b, const DualForm& f) {
  if (b.rows() != f.ambient().dim() || !b.is_square()) {
    throw Error(ErrorCode::InvalidArgument, "transform has the wrong size");
  }
  if (!is_unimodular(f.ctx(), b)) throw Error(ErrorCode::NotUnimodular, "matrix is not in GL(n, R)");
  const std::size_t n = b.rows();
  Matrix a(n, 1);
  for (std::size_t i = 0; i < n; ++i) a(i, 0) = f.coefficients()[i];
  Matrix out = solve(b.transpose(), a);
  return DualForm(f.ambient(), out.column(0));
}

}  // namespace btpgl
