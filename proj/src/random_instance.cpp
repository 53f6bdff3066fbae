#include <algorithm>
#include <limits>
#include <random>

#include "btpgl/cycles.hpp"
#include "btpgl/errors.hpp"

namespace btpgl {

std::string_view to_string(InstanceMode mode) {
  switch (mode) {
    case InstanceMode::Hyperplanes: return "hyperplanes";
    case InstanceMode::Submodules: return "submodules";
    case InstanceMode::HigherDim: return "higherdim";
  }
  return "unknown";
}

InstanceMode parse_instance_mode(std::string_view text) {
  if (text == "hyperplanes") return InstanceMode::Hyperplanes;
  if (text == "submodules") return InstanceMode::Submodules;
  if (text == "higherdim") return InstanceMode::HigherDim;
  throw Error(ErrorCode::ParseError, "unknown instance mode '" + std::string(text) + "'");
}

namespace {

// Raw 64-bit draws with rejection, so sequences do not depend on the
// standard library's distribution implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  bool coin() { return (engine_() >> 63) != 0; }

  // u * p^e, u a unit with |u| <= max(p, 4), e geometric(1/2); zero if e > max_val.
  Scalar entry(std::int64_t p, std::int64_t max_val) {
    std::int64_t e = 0;
    while (e <= max_val && coin()) ++e;
    if (e > max_val) return Scalar(0);
    const std::uint64_t range = static_cast<std::uint64_t>(std::max<std::int64_t>(p, 4));
    std::int64_t u;
    do {
      u = static_cast<std::int64_t>(below(range)) + 1;
    } while (u % p == 0);
    if (coin()) u = -u;
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return Scalar(mpz_class(mpz_class(static_cast<long>(u)) * pe));
  }

  // Composition of `total` into `parts` positive integers.
  std::vector<std::size_t> composition(std::size_t total, std::size_t parts) {
    std::vector<std::size_t> out(parts, 1);
    for (std::size_t extra = total - parts; extra > 0; --extra) ++out[below(parts)];
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

Matrix random_matrix(Sampler& rng, std::size_t rows, std::size_t cols, std::int64_t p, std::int64_t max_val) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.entry(p, max_val);
  return m;
}

std::optional<CycleConfiguration> draw(Sampler& rng, const RandomInstanceOptions& o, const LatticeBasis& m) {
  std::vector<LinearCycle> cycles;
  if (o.mode == InstanceMode::Hyperplanes) {
    for (std::size_t i = 0; i < o.n; ++i) {
      Matrix coeffs = random_matrix(rng, o.n, 1, o.p, o.max_val);
      if (min_valuation(m.ctx(), coeffs).is_infinite()) return std::nullopt;
      cycles.push_back(LinearCycle::hyperplane(DualForm::primitive(m, coeffs.column(0))));
    }
    return CycleConfiguration(m, std::move(cycles));
  }
  std::vector<std::size_t> codims;
  if (o.mode == InstanceMode::Submodules) {
    codims = rng.composition(o.n, o.d);
  } else {
    const std::size_t total = o.d + rng.below(o.n - o.d);  // in [d, n - 1]
    codims = rng.composition(total, o.d);
  }
  for (std::size_t codim : codims) {
    const std::size_t rank = o.n - codim;
    SplitSubmodule n = saturate_coordinates(m, random_matrix(rng, o.n, rank, o.p, o.max_val));
    if (n.rank() != rank) return std::nullopt;
    cycles.push_back(LinearCycle::submodule(std::move(n)));
  }
  return CycleConfiguration(m, std::move(cycles));
}

}  // namespace

GeneratedInstance random_instance(const RandomInstanceOptions& o) {
  if (o.n < 2 || o.n > 5) throw Error(ErrorCode::InvalidArgument, "n must lie in [2, 5]");
  if (o.max_val < 0) throw Error(ErrorCode::InvalidArgument, "max_val must be non-negative");
  if (o.mode != InstanceMode::Hyperplanes && (o.d < 2 || o.d > o.n)) {
    throw Error(ErrorCode::InvalidArgument, "d must lie in [2, n]");
  }
  if (o.mode == InstanceMode::HigherDim && o.d >= o.n) {
    throw Error(ErrorCode::InvalidArgument, "higher-dimensional intersections need d < n");
  }
  const PAdicContext ctx(o.p);
  const LatticeBasis m = LatticeBasis::standard(ctx, o.n);
  const ProperKind wanted = o.mode == InstanceMode::HigherDim ? ProperKind::ProperHigherDim : ProperKind::Proper0Dim;
  Sampler rng(o.seed);
  std::size_t rejections = 0;
  for (std::size_t attempt = 0; attempt < o.max_attempts; ++attempt) {
    auto cfg = draw(rng, o, m);
    if (cfg && properness_check(*cfg).kind == wanted) return GeneratedInstance{std::move(*cfg), rejections};
    ++rejections;
  }
  throw Error(ErrorCode::GenerationExhausted, "no " + std::string(to_string(wanted)) + " instance after " +
                                                   std::to_string(o.max_attempts) + " attempts");
}

}  // namespace btpgl
