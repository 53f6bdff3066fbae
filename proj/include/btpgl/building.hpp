#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "btpgl/lattice.hpp"

namespace btpgl {

/// Canonical encoding of a homothety class {L} relative to a reference
/// lattice M: the p-adic Hermite form of M^{-1} L after scaling so that its
/// minimal entry valuation is 0. Two lattices get equal keys iff they are
/// homothetic.
class ClassKey {
 public:
  ClassKey() = default;
  explicit ClassKey(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& bytes() const { return bytes_; }
  std::string hex() const;

  friend auto operator<=>(const ClassKey&, const ClassKey&) = default;

 private:
  std::string bytes_;
};

struct ClassKeyHash {
  std::size_t operator()(const ClassKey& k) const { return std::hash<std::string>{}(k.bytes()); }
};

/// A frame V = L_1 (+) ... (+) L_n of lines, each given by a spanning vector
/// (the columns of `frame`).
class Apartment {
 public:
  Apartment(PAdicContext ctx, Matrix frame);

  const PAdicContext& ctx() const { return ctx_; }
  const Matrix& frame() const { return frame_; }
  std::size_t dim() const { return frame_.rows(); }

  /// The vertex {sum R p^{k_i} v_i}.
  LatticeBasis vertex(const std::vector<std::int64_t>& k) const;

 private:
  PAdicContext ctx_;
  Matrix frame_;
};

/// Column Hermite form over R of an integral nonsingular matrix: upper
/// triangular, diagonal p^{e_i}, entries above the diagonal in row i reduced
/// into [0, p^{e_i}).
Matrix hermite_form(const PAdicContext& ctx, const Matrix& integral);

/// Key of the class of the lattice whose basis, in coordinates of the
/// reference lattice, is given by the columns of `t`.
ClassKey class_key_of_coordinates(const PAdicContext& ctx, const Matrix& t);

ClassKey class_key(const LatticeBasis& reference, const LatticeBasis& l);
bool class_equal(const LatticeBasis& l1, const LatticeBasis& l2);
bool adjacent(const LatticeBasis& l1, const LatticeBasis& l2);
/// Combinatorial distance between {l1} and {l2}: max - min of the invariant
/// exponents.
std::int64_t dist(const LatticeBasis& l1, const LatticeBasis& l2);

constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// The subspace-enumeration cap: BTPGL_ENUM_CAP if set, else the default.
std::uint64_t enumeration_cap();

/// Number of nonzero proper subspaces of F_p^n (saturating at UINT64_MAX).
std::uint64_t proper_subspace_count(std::size_t n, std::int64_t p);

/// Calls `visit` with the basis matrix (in coordinates of L) of every
/// lattice N with pL < N < L, one per nonzero proper subspace of L/pL.
/// Throws EnumerationTooLarge when the count exceeds `cap`.
void for_each_neighbor_basis(const PAdicContext& ctx, std::size_t n, std::uint64_t cap,
                             const std::function<void(const Matrix&)>& visit);

/// The bases produced by for_each_neighbor_basis, collected.
std::vector<Matrix> neighbor_bases(const PAdicContext& ctx, std::size_t n, std::uint64_t cap);

/// One representative per class adjacent to {l}.
std::vector<LatticeBasis> neighbors(const LatticeBasis& reference, const LatticeBasis& l,
                                    std::uint64_t cap = enumeration_cap());

/// Breadth-first distance from {start} to the nearest class whose key
/// (relative to `reference`) lies in `targets`; nullopt past radius_cap.
std::optional<std::int64_t> bfs_dist(const LatticeBasis& reference, const LatticeBasis& start,
                                     const std::set<ClassKey>& targets, std::int64_t radius_cap,
                                     std::uint64_t cap = enumeration_cap());

/// Normalized witness (k_i, min 0) with {l} = {sum R p^{k_i} v_i}, or
/// nullopt when {l} is not a vertex of the apartment.
std::optional<std::vector<std::int64_t>> in_apartment(const Apartment& ap, const LatticeBasis& l);

/// The ball of classes around a center, in BFS discovery order.
struct Ball {
  struct Node {
    ClassKey key;
    Matrix coordinates;  // Hermite representative in reference coordinates
    std::int64_t depth;
  };
  std::vector<Node> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j
};

Ball explore_ball(const LatticeBasis& reference, const LatticeBasis& center, std::int64_t radius,
                  std::uint64_t cap = enumeration_cap());

/// DOT rendering of a ball; nodes whose key is in `highlight` are filled.
std::string to_dot(const Ball& ball, const std::set<ClassKey>& highlight = {});

}  // namespace btpgl
