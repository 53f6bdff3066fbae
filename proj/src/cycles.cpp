#include "btpgl/cycles.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "btpgl/errors.hpp"

namespace btpgl {

LinearCycle LinearCycle::hyperplane(const DualForm& f) { return LinearCycle{hyperplane_kernel(f), f}; }

LinearCycle LinearCycle::submodule(SplitSubmodule n) { return LinearCycle{std::move(n), std::nullopt}; }

CycleConfiguration::CycleConfiguration(LatticeBasis ambient, std::vector<LinearCycle> cycles)
    : ambient_(std::move(ambient)), cycles_(std::move(cycles)) {
  if (cycles_.size() < 2) throw Error(ErrorCode::InvalidArgument, "a configuration needs at least two cycles");
  for (std::size_t i = 0; i < cycles_.size(); ++i) {
    const auto& c = cycles_[i];
    const std::string where = "cycle " + std::to_string(i);
    if (!(c.module.ambient() == ambient_)) throw Error(ErrorCode::InvalidArgument, where + " has a different ambient lattice");
    if (c.module.rank() == 0 || c.module.rank() >= dim()) {
      throw Error(ErrorCode::InvalidArgument, where + " must have rank strictly between 0 and n");
    }
    if (!is_split(c.module)) throw Error(ErrorCode::InvalidArgument, where + " is not a split submodule");
  }
}

std::vector<SplitSubmodule> CycleConfiguration::submodules() const {
  std::vector<SplitSubmodule> out;
  out.reserve(cycles_.size());
  for (const auto& c : cycles_) out.push_back(c.module);
  return out;
}

std::size_t CycleConfiguration::codim_sum() const {
  std::size_t c = 0;
  for (const auto& cy : cycles_) c += cy.codim();
  return c;
}

bool CycleConfiguration::all_hyperplanes() const {
  return std::all_of(cycles_.begin(), cycles_.end(), [](const LinearCycle& c) { return c.equation.has_value(); });
}

std::string_view to_string(ProperKind kind) {
  switch (kind) {
    case ProperKind::Proper0Dim: return "Proper0Dim";
    case ProperKind::ProperHigherDim: return "ProperHigherDim";
    case ProperKind::Improper: return "Improper";
    case ProperKind::EmptyIntersection: return "EmptyIntersection";
  }
  return "Unknown";
}

SplitSubmodule hyperplane_kernel(const DualForm& f) {
  const std::size_t n = f.ambient().dim();
  Matrix row(1, n);
  for (std::size_t j = 0; j < n; ++j) row(0, j) = f.coefficients()[j];
  return saturate_coordinates(f.ambient(), kernel(row));
}

namespace {

Matrix form_matrix(std::span<const DualForm> forms) {
  if (forms.empty()) throw Error(ErrorCode::InvalidArgument, "no forms given");
  const std::size_t n = forms.front().ambient().dim();
  if (forms.size() != n) throw Error(ErrorCode::InvalidArgument, "need exactly n forms");
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(forms[i].ambient() == forms.front().ambient())) {
      throw Error(ErrorCode::InvalidArgument, "forms live on different lattices");
    }
    for (std::size_t j = 0; j < n; ++j) a(j, i) = forms[i].coefficients()[j];
  }
  return a;
}

std::int64_t det_valuation(const PAdicContext& ctx, const Matrix& a) {
  Valuation v = val(ctx, determinant(a));
  if (v.is_infinite()) throw Error(ErrorCode::ImproperGenericIntersection, "the equations have a common zero over K");
  return v.value();
}

std::vector<FpMatrix> reductions(const CycleConfiguration& cfg) {
  std::vector<FpMatrix> out;
  for (const auto& c : cfg.cycles()) out.push_back(reduce(cfg.ctx(), c.module.coordinates()));
  return out;
}

}  // namespace

std::int64_t intersect_hyperplanes(std::span<const DualForm> forms) {
  return det_valuation(forms.front().ctx(), form_matrix(forms));
}

FpMatrix special_fibre_intersection(const CycleConfiguration& cfg) {
  auto reduced = reductions(cfg);
  return intersect_column_spaces(reduced);
}

Properness properness_check(const CycleConfiguration& cfg) {
  const std::size_t n = cfg.dim();
  const std::size_t c = cfg.codim_sum();
  auto subs = cfg.submodules();
  Properness out{ProperKind::Improper};
  out.generic_dim = intersect_spans(cfg.ambient(), subs).rank();
  out.special_dim = special_fibre_intersection(cfg).cols();
  if (c > n) {
    out.kind = out.special_dim == 0 ? ProperKind::EmptyIntersection : ProperKind::Improper;
  } else if (c == n) {
    if (out.generic_dim == 0 && out.special_dim == 0) {
      out.kind = ProperKind::EmptyIntersection;
    } else if (out.generic_dim == 0 && out.special_dim <= 1) {
      out.kind = ProperKind::Proper0Dim;
    }
  } else {
    const std::size_t r0 = n - c;
    if (out.generic_dim == r0 && out.special_dim <= r0 + 1) {
      out.kind = ProperKind::ProperHigherDim;
      out.r0 = r0;
    }
  }
  return out;
}

FFamily::FFamily(std::vector<SplitSubmodule> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) throw Error(ErrorCode::InvalidArgument, "empty F-family");
  const LatticeBasis& amb = generators_.front().ambient();
  coords_ = Matrix(amb.dim(), 0);
  for (const auto& g : generators_) {
    if (!(g.ambient() == amb)) throw Error(ErrorCode::InvalidArgument, "F generators on different lattices");
    if (g.rank() == 0) throw Error(ErrorCode::RankMismatch, "F generator of rank 0");
    coords_ = coords_.hconcat(g.coordinates());
  }
  if (coords_.cols() != amb.dim() || determinant(coords_).is_zero()) {
    throw Error(ErrorCode::RankMismatch, "F generators do not form a direct sum decomposition of V");
  }
}

LatticeBasis FFamily::vertex(std::span<const std::int64_t> k) const {
  if (k.size() != generators_.size()) throw Error(ErrorCode::InvalidArgument, "exponent tuple has wrong length");
  const PAdicContext& ctx = ambient().ctx();
  Matrix c = coords_;
  std::size_t col = 0;
  for (std::size_t j = 0; j < generators_.size(); ++j) {
    Scalar s = ctx.uniformizer_power(k[j]);
    for (std::size_t t = 0; t < generators_[j].rank(); ++t) c.scale_col(col++, s);
  }
  return LatticeBasis(ctx, ambient().matrix() * c);
}

FFamily build_F(const CycleConfiguration& cfg) {
  Properness prop = properness_check(cfg);
  if (cfg.codim_sum() != cfg.dim() ||
      (prop.kind != ProperKind::Proper0Dim && prop.kind != ProperKind::EmptyIntersection)) {
    throw Error(ErrorCode::ProperFail, "F needs cycles meeting properly with codimensions summing to n (got " +
                                           std::string(to_string(prop.kind)) + ")");
  }
  auto subs = cfg.submodules();
  std::vector<SplitSubmodule> gens;
  for (std::size_t j = 0; j < subs.size(); ++j) {
    std::vector<SplitSubmodule> others;
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (i != j) others.push_back(subs[i]);
    SplitSubmodule lj = intersect_spans(cfg.ambient(), others);
    if (lj.rank() != cfg.cycles()[j].codim()) {
      throw Error(ErrorCode::RankMismatch, "partial intersection L_" + std::to_string(j + 1) + " has rank " +
                                               std::to_string(lj.rank()));
    }
    gens.push_back(std::move(lj));
  }
  return FFamily(std::move(gens));
}

namespace {

// For the vertex L_k = (+) p^{k_j} G_j and the lattice M:
//   p^s L_k in M  iff  s >= -(k_j + alpha_j) for all j,
//   M in p^r L_k  iff  r <= nu_j - k_j      for all j,
// where alpha_j is the minimal valuation of block j of M^{-1} G and nu_j that
// of block j (rows) of G^{-1} M. dist = s_min - r_max.
struct BlockValuations {
  std::vector<std::int64_t> alpha;
  std::vector<std::int64_t> nu;

  std::int64_t distance(std::span<const std::int64_t> k) const {
    std::int64_t lo_a = std::numeric_limits<std::int64_t>::max();
    std::int64_t lo_n = std::numeric_limits<std::int64_t>::max();
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      lo_a = std::min(lo_a, k[j] + alpha[j]);
      lo_n = std::min(lo_n, nu[j] - k[j]);
    }
    return -lo_a - lo_n;
  }
};

BlockValuations block_valuations(const LatticeBasis& m, const FFamily& f) {
  if (!(m.ctx() == f.ambient().ctx()) || m.dim() != f.ambient().dim()) {
    throw Error(ErrorCode::InvalidArgument, "lattice and F-family live in different spaces");
  }
  const PAdicContext& ctx = m.ctx();
  Matrix x = solve(m.matrix(), f.ambient().matrix() * f.coordinates());
  Matrix y = inverse(x);
  BlockValuations out;
  std::size_t first = 0;
  for (const auto& g : f.generators()) {
    Valuation a = Valuation::infinity();
    Valuation b = Valuation::infinity();
    for (std::size_t t = first; t < first + g.rank(); ++t) {
      for (std::size_t i = 0; i < m.dim(); ++i) {
        a = std::min(a, val(ctx, x(i, t)));
        b = std::min(b, val(ctx, y(t, i)));
      }
    }
    out.alpha.push_back(a.value());
    out.nu.push_back(b.value());
    first += g.rank();
  }
  return out;
}

}  // namespace

std::int64_t dist_to_vertex(const LatticeBasis& m, const FFamily& f, std::span<const std::int64_t> k) {
  if (k.size() != f.generators().size()) throw Error(ErrorCode::InvalidArgument, "exponent tuple has wrong length");
  return block_valuations(m, f).distance(k);
}

std::int64_t dist_to_F(const LatticeBasis& m, const FFamily& f) {
  const BlockValuations bv = block_valuations(m, f);
  const std::size_t d = f.generators().size();
  std::vector<std::int64_t> k(d, 0);
  const std::int64_t b0 = bv.distance(k);
  if (b0 == 0 || d == 1) return b0;
  // Any vertex closer than B0 has spread(k) <= 2 B0 by the triangle
  // inequality, so this window contains the minimum.
  const std::int64_t w = 2 * b0;
  std::int64_t best = b0;
  for (std::size_t j = 0; j + 1 < d; ++j) k[j] = -w;
  while (true) {
    best = std::min(best, bv.distance(k));
    std::size_t j = 0;
    while (j + 1 < d && k[j] == w) k[j++] = -w;
    if (j + 1 == d) break;
    ++k[j];
  }
  return best;
}

std::set<ClassKey> window_keys(const LatticeBasis& reference, const FFamily& f, std::int64_t half_width) {
  const std::size_t d = f.generators().size();
  std::vector<std::int64_t> k(d, 0);
  for (std::size_t j = 0; j + 1 < d; ++j) k[j] = -half_width;
  std::set<ClassKey> keys;
  while (true) {
    keys.insert(class_key(reference, f.vertex(k)));
    std::size_t j = 0;
    while (j + 1 < d && k[j] == half_width) k[j++] = -half_width;
    if (j + 1 >= d) break;
    ++k[j];
  }
  return keys;
}

Matrix cycle_equations(const CycleConfiguration& cfg) {
  const std::size_t n = cfg.dim();
  Matrix a(n, 0);
  const SplitSubmodule whole = SplitSubmodule::whole(cfg.ambient());
  for (const auto& c : cfg.cycles()) {
    if (c.equation) {
      Matrix col(n, 1);
      for (std::size_t j = 0; j < n; ++j) col(j, 0) = c.equation->coefficients()[j];
      a = a.hconcat(col);
      continue;
    }
    // Rows of P^{-1} beyond rank(N) vanish on N and form a basis of (M/N)^*.
    SplitSubmodule comp = complete_to_complement(whole, c.module);
    Matrix pinv = inverse(c.module.coordinates().hconcat(comp.coordinates()));
    Matrix forms(n, comp.rank());
    for (std::size_t t = 0; t < comp.rank(); ++t)
      for (std::size_t j = 0; j < n; ++j) forms(j, t) = pinv(c.module.rank() + t, j);
    a = a.hconcat(forms);
  }
  return a;
}

FormulaReport verify_intersection_formula(const CycleConfiguration& cfg) {
  Properness prop = properness_check(cfg);
  if (prop.kind != ProperKind::Proper0Dim && prop.kind != ProperKind::EmptyIntersection) {
    throw Error(ErrorCode::ProperFail, "cycles do not meet properly in dimension zero (" +
                                           std::string(to_string(prop.kind)) + ")");
  }
  FormulaReport r;
  r.lhs = det_valuation(cfg.ctx(), cycle_equations(cfg));
  r.rhs = dist_to_F(cfg.ambient(), build_F(cfg));
  r.agree = r.lhs == r.rhs;
  return r;
}

FFamily hyperplane_apartment(std::span<const DualForm> forms) {
  Matrix a = form_matrix(forms);
  det_valuation(forms.front().ctx(), a);
  const LatticeBasis& amb = forms.front().ambient();
  std::vector<SplitSubmodule> kernels;
  for (const auto& f : forms) kernels.push_back(hyperplane_kernel(f));
  std::vector<SplitSubmodule> lines;
  for (std::size_t j = 0; j < kernels.size(); ++j) {
    std::vector<SplitSubmodule> others;
    for (std::size_t i = 0; i < kernels.size(); ++i)
      if (i != j) others.push_back(kernels[i]);
    lines.push_back(intersect_spans(amb, others));
  }
  return FFamily(std::move(lines));
}

ApartmentDemoReport apartment_distance_demo(std::span<const DualForm> forms) {
  ApartmentDemoReport r;
  r.intersection_number = intersect_hyperplanes(forms);
  r.dist_to_apartment = dist_to_F(forms.front().ambient(), hyperplane_apartment(forms));
  return r;
}

HigherDimParts higher_dim_parts(const CycleConfiguration& cfg) {
  Properness prop = properness_check(cfg);
  if (prop.kind != ProperKind::ProperHigherDim || prop.r0 == 0) {
    throw Error(ErrorCode::ProperFail, "cycles do not meet properly in positive dimension (" +
                                           std::string(to_string(prop.kind)) + ")");
  }
  auto subs = cfg.submodules();
  HigherDimParts parts{intersect_spans(cfg.ambient(), subs), {}};
  if (parts.l0.rank() != prop.r0) throw Error(ErrorCode::RankMismatch, "rank of L_0 differs from r_0");
  for (std::size_t j = 0; j < subs.size(); ++j) {
    std::vector<SplitSubmodule> others;
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (i != j) others.push_back(subs[i]);
    SplitSubmodule lj = intersect_spans(cfg.ambient(), others);
    if (lj.rank() != cfg.cycles()[j].codim() + prop.r0) {
      throw Error(ErrorCode::RankMismatch, "partial intersection L_" + std::to_string(j + 1) + " has rank " +
                                               std::to_string(lj.rank()));
    }
    parts.partials.push_back(std::move(lj));
  }
  return parts;
}

std::vector<SplitSubmodule> default_complements(const HigherDimParts& parts) {
  std::vector<SplitSubmodule> out;
  for (const auto& lj : parts.partials) out.push_back(complete_to_complement(lj, parts.l0));
  return out;
}

FFamily higher_dim_family(const HigherDimParts& parts, std::span<const SplitSubmodule> complements) {
  if (complements.size() != parts.partials.size()) {
    throw Error(ErrorCode::InvalidArgument, "one complement per partial intersection is required");
  }
  std::vector<SplitSubmodule> gens;
  for (std::size_t j = 0; j < complements.size(); ++j) {
    const SplitSubmodule& lj = parts.partials[j];
    SplitSubmodule sum(lj.ambient(), parts.l0.coordinates().hconcat(complements[j].coordinates()));
    if (sum.rank() != lj.rank() || !same_module(sum, lj)) {
      throw Error(ErrorCode::NotSplitInside, "complement " + std::to_string(j + 1) + " does not complete L_0 to L_j");
    }
    gens.push_back(complements[j]);
  }
  gens.push_back(parts.l0);
  return FFamily(std::move(gens));
}

CycleDecomposition decompose_intersection(const CycleConfiguration& cfg) {
  HigherDimParts parts = higher_dim_parts(cfg);
  auto comps = default_complements(parts);
  FFamily f = higher_dim_family(parts, comps);
  return CycleDecomposition{parts.l0, 1, special_fibre_intersection(cfg), dist_to_F(cfg.ambient(), f)};
}

std::int64_t equation_minor_valuation(const CycleConfiguration& cfg) {
  const Matrix a = cycle_equations(cfg);
  const std::size_t n = a.rows(), c = a.cols();
  if (c > n) throw Error(ErrorCode::InvalidArgument, "more equations than coordinates");
  std::vector<std::size_t> rows(c);
  for (std::size_t i = 0; i < c; ++i) rows[i] = i;
  Valuation best = Valuation::infinity();
  while (true) {
    Matrix minor(c, c);
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < c; ++j) minor(i, j) = a(rows[i], j);
    best = std::min(best, val(cfg.ctx(), determinant(minor)));
    std::size_t i = c;
    while (i > 0 && rows[i - 1] == n - c + i - 1) --i;
    if (i == 0) break;
    ++rows[i - 1];
    for (std::size_t t = i; t < c; ++t) rows[t] = rows[t - 1] + 1;
  }
  if (best.is_infinite()) throw Error(ErrorCode::ImproperGenericIntersection, "equations are dependent");
  return best.value();
}

}  // namespace btpgl
