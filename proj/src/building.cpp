#include "btpgl/building.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "btpgl/errors.hpp"

namespace btpgl {

std::string ClassKey::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (unsigned char c : bytes_) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

Apartment::Apartment(PAdicContext ctx, Matrix frame) : ctx_(ctx), frame_(std::move(frame)) {
  if (!frame_.is_square() || determinant(frame_).is_zero()) {
    throw Error(ErrorCode::InvalidArgument, "apartment frame vectors must be linearly independent");
  }
}

LatticeBasis Apartment::vertex(const std::vector<std::int64_t>& k) const {
  if (k.size() != dim()) throw Error(ErrorCode::InvalidArgument, "apartment exponent tuple has wrong length");
  Matrix m = frame_;
  for (std::size_t i = 0; i < k.size(); ++i) m.scale_col(i, ctx_.uniformizer_power(k[i]));
  return LatticeBasis(ctx_, std::move(m));
}

Matrix hermite_form(const PAdicContext& ctx, const Matrix& integral) {
  const std::size_t n = integral.rows();
  Matrix h = integral;
  std::vector<std::int64_t> exps(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t i = n - 1 - step;
    std::size_t pc = 0;
    Valuation best = Valuation::infinity();
    for (std::size_t c = 0; c <= i; ++c) {
      Valuation v = val(ctx, h(i, c));
      if (v < best) {
        best = v;
        pc = c;
      }
    }
    if (best.is_infinite()) throw Error(ErrorCode::SingularTransition, "hermite form of a singular matrix");
    if (best < Valuation(0)) throw Error(ErrorCode::NonIntegralEntry, "hermite form needs entries in R");
    h.swap_cols(i, pc);
    h.scale_col(i, Scalar(1) / unit_part(ctx, h(i, i)));
    exps[i] = best.value();
    for (std::size_t c = 0; c < i; ++c) {
      if (!h(i, c).is_zero()) h.axpy_col(c, i, h(i, c) / h(i, i));
    }
  }
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t step = 0; step < j; ++step) {
      const std::size_t i = j - 1 - step;
      if (h(i, j).is_zero()) continue;
      Scalar rep = exps[i] == 0 ? Scalar(0) : Scalar(residue_mod_power(ctx, h(i, j), exps[i]));
      Scalar q = (h(i, j) - rep) / h(i, i);
      h.axpy_col(j, i, q);
    }
  }
  return h;
}

namespace {

ClassKey encode_hermite(const PAdicContext& ctx, const Matrix& h) {
  const std::size_t n = h.rows();
  std::string out = std::to_string(n) + ";" + std::to_string(ctx.p()) + ";";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ',';
    out += std::to_string(val(ctx, h(i, i)).value());
  }
  out += ';';
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!first) out += ',';
      first = false;
      out += h(i, j).numerator().get_str(16);
    }
  }
  return ClassKey(std::move(out));
}

Matrix normalized_hermite(const PAdicContext& ctx, const Matrix& t) {
  Valuation m = min_valuation(ctx, t);
  if (m.is_infinite()) throw Error(ErrorCode::SingularTransition, "zero lattice basis");
  return hermite_form(ctx, t.scaled(ctx.uniformizer_power(-m.value())));
}

std::int64_t spread(const std::vector<std::int64_t>& e) {
  auto [lo, hi] = std::minmax_element(e.begin(), e.end());
  return *hi - *lo;
}

void require_compatible(const LatticeBasis& a, const LatticeBasis& b) {
  if (!(a.ctx() == b.ctx()) || a.dim() != b.dim()) {
    throw Error(ErrorCode::InvalidArgument, "lattices live in different spaces");
  }
}

}  // namespace

ClassKey class_key_of_coordinates(const PAdicContext& ctx, const Matrix& t) {
  return encode_hermite(ctx, normalized_hermite(ctx, t));
}

ClassKey class_key(const LatticeBasis& reference, const LatticeBasis& l) {
  require_compatible(reference, l);
  return class_key_of_coordinates(reference.ctx(), reference.coordinates_of(l.matrix()));
}

bool class_equal(const LatticeBasis& l1, const LatticeBasis& l2) {
  require_compatible(l1, l2);
  const PAdicContext& ctx = l1.ctx();
  Matrix t = solve(l1.matrix(), l2.matrix());
  Valuation m = min_valuation(ctx, t);
  Valuation d = val(ctx, determinant(t));
  return d == Valuation(static_cast<std::int64_t>(l1.dim()) * m.value());
}

std::int64_t dist(const LatticeBasis& l1, const LatticeBasis& l2) {
  require_compatible(l1, l2);
  return spread(invariant_exponents(l1, l2));
}

bool adjacent(const LatticeBasis& l1, const LatticeBasis& l2) { return dist(l1, l2) == 1; }

std::uint64_t enumeration_cap() {
  if (const char* env = std::getenv("BTPGL_ENUM_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return kDefaultEnumerationCap;
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return b > kSaturated - a ? kSaturated : a + b; }

// Pivot sets of size k in increasing lexicographic order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t step = 0; step < k; ++step) {
    const std::size_t i = k - 1 - step;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Free (row, column) slots of the reduced row echelon form with these pivots.
std::vector<std::pair<std::size_t, std::size_t>> free_slots(const std::vector<std::size_t>& pivots, std::size_t n) {
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = pivots[i] + 1; j < n; ++j)
      if (!is_pivot[j]) slots.emplace_back(i, j);
  return slots;
}

}  // namespace

std::uint64_t proper_subspace_count(std::size_t n, std::int64_t p) {
  std::uint64_t total = 0;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::size_t> pivots(k);
    for (std::size_t i = 0; i < k; ++i) pivots[i] = i;
    do {
      std::uint64_t cells = 1;
      for (std::size_t s = free_slots(pivots, n).size(); s > 0; --s) cells = sat_mul(cells, static_cast<std::uint64_t>(p));
      total = sat_add(total, cells);
    } while (next_combination(pivots, n));
  }
  return total;
}

void for_each_neighbor_basis(const PAdicContext& ctx, std::size_t n, std::uint64_t cap,
                             const std::function<void(const Matrix&)>& visit) {
  const std::uint64_t count = proper_subspace_count(n, ctx.p());
  if (count > cap) {
    throw Error(ErrorCode::EnumerationTooLarge,
                std::to_string(count) + " subspaces exceed the enumeration cap " + std::to_string(cap));
  }
  const Scalar p(static_cast<long>(ctx.p()));
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::size_t> pivots(k);
    for (std::size_t i = 0; i < k; ++i) pivots[i] = i;
    do {
      auto slots = free_slots(pivots, n);
      std::vector<bool> is_pivot(n, false);
      for (auto c : pivots) is_pivot[c] = true;
      Matrix base(n, n);
      for (std::size_t i = 0; i < k; ++i) base(pivots[i], i) = 1;
      std::size_t col = k;
      for (std::size_t j = 0; j < n; ++j) {
        if (!is_pivot[j]) base(j, col++) = p;
      }
      std::vector<std::int64_t> digits(slots.size(), 0);
      while (true) {
        Matrix c = base;
        for (std::size_t s = 0; s < slots.size(); ++s) {
          c(slots[s].second, slots[s].first) = Scalar(static_cast<long>(digits[s]));
        }
        visit(c);
        std::size_t s = 0;
        while (s < digits.size() && ++digits[s] == ctx.p()) digits[s++] = 0;
        if (s == digits.size()) break;
      }
    } while (next_combination(pivots, n));
  }
}

std::vector<Matrix> neighbor_bases(const PAdicContext& ctx, std::size_t n, std::uint64_t cap) {
  std::vector<Matrix> out;
  for_each_neighbor_basis(ctx, n, cap, [&](const Matrix& c) { out.push_back(c); });
  return out;
}

std::vector<LatticeBasis> neighbors(const LatticeBasis& reference, const LatticeBasis& l, std::uint64_t cap) {
  require_compatible(reference, l);
  std::vector<LatticeBasis> out;
  std::set<ClassKey> seen;
  for_each_neighbor_basis(l.ctx(), l.dim(), cap, [&](const Matrix& c) {
    LatticeBasis nb(l.ctx(), l.matrix() * c);
    if (!seen.insert(class_key(reference, nb)).second) {
      throw std::logic_error("neighbor enumeration produced a duplicate class");
    }
    out.push_back(std::move(nb));
  });
  return out;
}

std::optional<std::int64_t> bfs_dist(const LatticeBasis& reference, const LatticeBasis& start,
                                     const std::set<ClassKey>& targets, std::int64_t radius_cap,
                                     std::uint64_t cap) {
  require_compatible(reference, start);
  if (radius_cap < 0) throw Error(ErrorCode::InvalidArgument, "negative radius cap");
  const PAdicContext& ctx = reference.ctx();
  const std::size_t n = reference.dim();
  const std::vector<Matrix> bases = neighbor_bases(ctx, n, cap);
  // Vertices are carried as Hermite representatives in reference coordinates,
  // so each neighbor key is one product and one Hermite reduction.
  Matrix h0 = normalized_hermite(ctx, reference.coordinates_of(start.matrix()));
  ClassKey k0 = encode_hermite(ctx, h0);
  if (targets.contains(k0)) return 0;
  std::unordered_set<ClassKey, ClassKeyHash> visited{k0};
  std::vector<Matrix> frontier{std::move(h0)};
  for (std::int64_t depth = 1; depth <= radius_cap && !frontier.empty(); ++depth) {
    std::vector<Matrix> next;
    for (const auto& h : frontier) {
      for (const auto& c : bases) {
        Matrix hn = normalized_hermite(ctx, h * c);
        ClassKey key = encode_hermite(ctx, hn);
        if (!visited.insert(key).second) continue;
        if (targets.contains(key)) return depth;
        next.push_back(std::move(hn));
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

std::optional<std::vector<std::int64_t>> in_apartment(const Apartment& ap, const LatticeBasis& l) {
  if (!(ap.ctx() == l.ctx()) || ap.dim() != l.dim()) {
    throw Error(ErrorCode::InvalidArgument, "apartment and lattice live in different spaces");
  }
  const PAdicContext& ctx = ap.ctx();
  Matrix t = solve(ap.frame(), l.matrix());
  std::vector<std::int64_t> k(t.rows());
  for (std::size_t i = 0; i < t.rows(); ++i) {
    Valuation m = Valuation::infinity();
    for (std::size_t j = 0; j < t.cols(); ++j) m = std::min(m, val(ctx, t(i, j)));
    k[i] = m.value();
    t.scale_row(i, ctx.uniformizer_power(-k[i]));
  }
  if (val(ctx, determinant(t)) != Valuation(0)) return std::nullopt;
  const std::int64_t lo = *std::min_element(k.begin(), k.end());
  for (auto& x : k) x -= lo;
  return k;
}

Ball explore_ball(const LatticeBasis& reference, const LatticeBasis& center, std::int64_t radius,
                  std::uint64_t cap) {
  require_compatible(reference, center);
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "negative radius");
  const PAdicContext& ctx = reference.ctx();
  const std::size_t n = reference.dim();
  const std::vector<Matrix> bases = radius > 0 ? neighbor_bases(ctx, n, cap) : std::vector<Matrix>{};
  Ball ball;
  std::map<ClassKey, std::size_t> index;
  Matrix h0 = normalized_hermite(ctx, reference.coordinates_of(center.matrix()));
  ClassKey k0 = encode_hermite(ctx, h0);
  index.emplace(k0, 0);
  ball.nodes.push_back({k0, std::move(h0), 0});
  for (std::size_t i = 0; i < ball.nodes.size(); ++i) {
    if (ball.nodes[i].depth >= radius) continue;
    const std::int64_t depth = ball.nodes[i].depth;
    for (const auto& c : bases) {
      Matrix hn = normalized_hermite(ctx, ball.nodes[i].coordinates * c);
      ClassKey key = encode_hermite(ctx, hn);
      if (index.contains(key)) continue;
      index.emplace(key, ball.nodes.size());
      ball.nodes.push_back({std::move(key), std::move(hn), depth + 1});
    }
  }
  if (radius == 0) return ball;
  for (std::size_t i = 0; i < ball.nodes.size(); ++i) {
    for (const auto& c : bases) {
      ClassKey key = class_key_of_coordinates(ctx, ball.nodes[i].coordinates * c);
      auto it = index.find(key);
      if (it != index.end() && it->second > i) ball.edges.emplace_back(i, it->second);
    }
  }
  std::sort(ball.edges.begin(), ball.edges.end());
  return ball;
}

std::string to_dot(const Ball& ball, const std::set<ClassKey>& highlight) {
  std::ostringstream os;
  os << "graph building {\n";
  for (std::size_t i = 0; i < ball.nodes.size(); ++i) {
    const auto& node = ball.nodes[i];
    os << "  \"" << node.key.hex() << "\" [label=\"v" << i << " d=" << node.depth << "\"";
    if (highlight.contains(node.key)) os << ", style=filled, fillcolor=\"#f4a261\"";
    os << "];\n";
  }
  for (const auto& [a, b] : ball.edges) {
    os << "  \"" << ball.nodes[a].key.hex() << "\" -- \"" << ball.nodes[b].key.hex() << "\";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace btpgl
