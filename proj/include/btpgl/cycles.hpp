#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "btpgl/building.hpp"
#include "btpgl/dual_form.hpp"
#include "btpgl/fp_matrix.hpp"
#include "btpgl/lattice.hpp"

namespace btpgl {

/// A linear cycle P(N) on P(M). Hyperplanes given by an equation keep it, so
/// their intersection number can be read off the equations directly.
struct LinearCycle {
  SplitSubmodule module;
  std::optional<DualForm> equation;

  static LinearCycle hyperplane(const DualForm& f);
  static LinearCycle submodule(SplitSubmodule n);

  std::size_t codim() const { return module.ambient().dim() - module.rank(); }
};

/// d >= 2 linear cycles on P(M), each of rank strictly between 0 and n.
class CycleConfiguration {
 public:
  CycleConfiguration(LatticeBasis ambient, std::vector<LinearCycle> cycles);

  const LatticeBasis& ambient() const { return ambient_; }
  const PAdicContext& ctx() const { return ambient_.ctx(); }
  std::size_t dim() const { return ambient_.dim(); }
  const std::vector<LinearCycle>& cycles() const { return cycles_; }
  std::vector<SplitSubmodule> submodules() const;
  std::size_t codim_sum() const;
  bool all_hyperplanes() const;

 private:
  LatticeBasis ambient_;
  std::vector<LinearCycle> cycles_;
};

enum class ProperKind { Proper0Dim, ProperHigherDim, Improper, EmptyIntersection };

std::string_view to_string(ProperKind kind);

struct Properness {
  ProperKind kind;
  std::size_t r0 = 0;           // generic dimension for ProperHigherDim
  std::size_t generic_dim = 0;  // dim_K of the intersection of the N_iK
  std::size_t special_dim = 0;  // dim_Fp of the intersection of the N_ik
};

/// ker f intersected with M: a split submodule of rank n - 1.
SplitSubmodule hyperplane_kernel(const DualForm& f);

/// v(det A) for the coefficient matrix A (column i = coefficients of f_i).
/// Throws ImproperGenericIntersection when det A = 0.
std::int64_t intersect_hyperplanes(std::span<const DualForm> forms);

Properness properness_check(const CycleConfiguration& cfg);

/// Generators whose p-power scaled direct sums enumerate a vertex set F.
/// Their K-spans must be independent and fill V.
class FFamily {
 public:
  explicit FFamily(std::vector<SplitSubmodule> generators);

  const std::vector<SplitSubmodule>& generators() const { return generators_; }
  const LatticeBasis& ambient() const { return generators_.front().ambient(); }
  /// Concatenated generator coordinates (ambient coordinates), n x n.
  const Matrix& coordinates() const { return coords_; }

  /// The vertex {p^{k_1} G_1 (+) ... (+) p^{k_d} G_d}.
  LatticeBasis vertex(std::span<const std::int64_t> k) const;

 private:
  std::vector<SplitSubmodule> generators_;
  Matrix coords_;
};

/// F for d cycles with codimensions summing to n: L_j = intersection of the
/// N_i with i != j.
FFamily build_F(const CycleConfiguration& cfg);

/// Exact min over k (last entry fixed to 0) of dist({M}, F-vertex(k)),
/// searched over |k_j| <= 2 B0 where B0 is the distance at k = 0.
std::int64_t dist_to_F(const LatticeBasis& m, const FFamily& f);

/// Distance from {m} to the F-vertex with exponents k, via the containment
/// exponents s and r of the two lattices.
std::int64_t dist_to_vertex(const LatticeBasis& m, const FFamily& f, std::span<const std::int64_t> k);

/// Keys (relative to `reference`) of all F-vertices with k_last = 0 and
/// |k_j| <= half_width.
std::set<ClassKey> window_keys(const LatticeBasis& reference, const FFamily& f, std::int64_t half_width);

/// The n x n matrix of equations: for each cycle, a basis of (M/N_i)^* as
/// columns of coefficients against the dual basis of M.
Matrix cycle_equations(const CycleConfiguration& cfg);

struct FormulaReport {
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  bool agree = false;
};

/// lhs: v(det) of the equation matrix; rhs: dist_to_F({M}, F).
/// Throws ProperFail unless the cycles meet properly in dimension zero (or
/// not at all).
FormulaReport verify_intersection_formula(const CycleConfiguration& cfg);

struct ApartmentDemoReport {
  std::int64_t dist_to_apartment = 0;
  std::int64_t intersection_number = 0;
};

/// The apartment of the lines U_j = intersection of ker f_i (i != j), as an F-family.
FFamily hyperplane_apartment(std::span<const DualForm> forms);

ApartmentDemoReport apartment_distance_demo(std::span<const DualForm> forms);

struct CycleDecomposition {
  SplitSubmodule generic_component;
  std::int64_t generic_multiplicity = 1;
  FpMatrix special_component;  // basis columns in F_p^n (ambient coordinates)
  std::int64_t special_multiplicity = 0;
};

/// L_0 and the partial intersections L_j for a ProperHigherDim configuration.
struct HigherDimParts {
  SplitSubmodule l0;
  std::vector<SplitSubmodule> partials;
};

HigherDimParts higher_dim_parts(const CycleConfiguration& cfg);

/// Complements L_j' of L_0 in each L_j from complete_to_complement.
std::vector<SplitSubmodule> default_complements(const HigherDimParts& parts);

/// F = {p^{k_1} L_1' (+) ... (+) p^{k_d} L_d' (+) p^{k_{d+1}} L_0}. Each
/// complement must satisfy L_j = L_0 (+) L_j' (NotSplitInside otherwise).
FFamily higher_dim_family(const HigherDimParts& parts, std::span<const SplitSubmodule> complements);

/// Intersection of the reductions N_ik as a subspace of F_p^n.
FpMatrix special_fibre_intersection(const CycleConfiguration& cfg);

CycleDecomposition decompose_intersection(const CycleConfiguration& cfg);

/// Minimal valuation of the maximal minors of the equation matrix. For a
/// ProperHigherDim configuration this is the intersection number of the
/// images of the cycles in M / L_0.
std::int64_t equation_minor_valuation(const CycleConfiguration& cfg);

enum class InstanceMode { Hyperplanes, Submodules, HigherDim };

std::string_view to_string(InstanceMode mode);
InstanceMode parse_instance_mode(std::string_view text);

struct RandomInstanceOptions {
  std::uint64_t seed = 1;
  std::size_t n = 2;
  std::int64_t p = 2;
  std::size_t d = 2;  // ignored for Hyperplanes (always n)
  std::int64_t max_val = 4;
  InstanceMode mode = InstanceMode::Hyperplanes;
  std::size_t max_attempts = 10000;
};

struct GeneratedInstance {
  CycleConfiguration config;
  std::size_t rejections = 0;
};

/// Seeded rejection sampler. Hyperplanes and Submodules modes yield
/// Proper0Dim configurations, HigherDim yields ProperHigherDim. Entries are
/// u * p^e with u a small unit and e geometric, zero beyond max_val.
GeneratedInstance random_instance(const RandomInstanceOptions& opts);

}  // namespace btpgl
