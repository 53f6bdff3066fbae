#include "btpgl/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>

#include "btpgl/errors.hpp"
#include "btpgl/io.hpp"

namespace btpgl::cli {

using io::json;

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ImproperGenericIntersection:
    case ErrorCode::ProperFail:
      return kImproper;
    case ErrorCode::EnumerationTooLarge:
      return kResourceCap;
    default:
      return kParseError;
  }
}

// Runs `body`, mapping library errors to exit codes with a one-line diagnostic.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  f << text;
}

// F-family whose distance from {M} equals the multiplicity.
FFamily family_for(const CycleConfiguration& cfg, const Properness& prop) {
  if (prop.kind == ProperKind::ProperHigherDim) {
    HigherDimParts parts = higher_dim_parts(cfg);
    return higher_dim_family(parts, default_complements(parts));
  }
  return build_F(cfg);
}

// BFS distance from {M} to the F-vertices. F-vertices at distance b from {M}
// lie within spread 2 * b0 of the k = 0 vertex, hence inside this window.
std::optional<std::int64_t> bfs_to_family(const LatticeBasis& m, const FFamily& f) {
  const std::int64_t b0 = dist(m, f.vertex(std::vector<std::int64_t>(f.generators().size(), 0)));
  return bfs_dist(m, m, window_keys(m, f, 2 * b0), b0);
}

}  // namespace

Oracle parse_oracle(std::string_view text) {
  if (text == "formula") return Oracle::Formula;
  if (text == "bfs") return Oracle::Bfs;
  if (text == "both") return Oracle::Both;
  throw Error(ErrorCode::ParseError, "unknown oracle '" + std::string(text) + "'");
}

std::string_view to_string(Oracle o) {
  switch (o) {
    case Oracle::Formula: return "formula";
    case Oracle::Bfs: return "bfs";
    case Oracle::Both: return "both";
  }
  return "unknown";
}

int cmd_intersect(const std::string& instance_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CycleConfiguration cfg = io::configuration_from_json(io::read_file(instance_path));
    if (cfg.all_hyperplanes() && cfg.cycles().size() == cfg.dim()) {
      std::vector<DualForm> forms;
      for (const auto& c : cfg.cycles()) forms.push_back(*c.equation);
      out << json{{"number", intersect_hyperplanes(forms)}}.dump() << '\n';
      return int(kOk);
    }
    const Properness prop = properness_check(cfg);
    switch (prop.kind) {
      case ProperKind::Proper0Dim:
      case ProperKind::EmptyIntersection: {
        const FormulaReport r = verify_intersection_formula(cfg);
        json j = io::to_json(r, prop);
        j["number"] = r.lhs;
        out << j.dump() << '\n';
        if (!r.agree) {
          err << "disagreement: equations give " << r.lhs << ", distance gives " << r.rhs << '\n';
          return int(kDisagreement);
        }
        return int(kOk);
      }
      case ProperKind::ProperHigherDim:
        out << io::to_json(decompose_intersection(cfg), prop).dump() << '\n';
        return int(kOk);
      case ProperKind::Improper:
        break;
    }
    err << "Improper: generic dimension " << prop.generic_dim << ", special dimension " << prop.special_dim
        << '\n';
    return int(kImproper);
  });
}

int cmd_dist(const std::string& pair_path, Oracle oracle, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const io::LatticePair pair = io::lattice_pair_from_json(io::read_file(pair_path));
    const std::int64_t formula = dist(pair.first, pair.second);
    if (oracle != Oracle::Bfs) out << formula << '\n';
    if (oracle == Oracle::Formula) return int(kOk);
    const auto bfs = bfs_dist(pair.first, pair.first, {class_key(pair.first, pair.second)}, formula + 1);
    if (!bfs || *bfs != formula) {
      err << "oracle mismatch: formula " << formula << ", bfs " << (bfs ? std::to_string(*bfs) : "none") << '\n';
      return int(kDisagreement);
    }
    out << *bfs << '\n';
    return int(kOk);
  });
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t index) {
  // splitmix64 finalizer over seed + index
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int cmd_verify(const CampaignConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
    const auto start = std::chrono::steady_clock::now();
    std::size_t agreements = 0, rejections = 0;
    std::int64_t max_lhs = 0;
    std::optional<std::size_t> first_bad;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      RandomInstanceOptions o;
      o.seed = trial_seed(cfg.seed, t);
      o.n = cfg.n;
      o.p = cfg.p;
      o.d = cfg.mode == InstanceMode::Hyperplanes ? cfg.n : cfg.d;
      o.max_val = cfg.max_val;
      o.mode = cfg.mode;
      GeneratedInstance inst = random_instance(o);
      rejections += inst.rejections;
      const Properness prop = properness_check(inst.config);
      std::int64_t lhs, rhs;
      if (cfg.mode == InstanceMode::HigherDim) {
        lhs = equation_minor_valuation(inst.config);
        rhs = decompose_intersection(inst.config).special_multiplicity;
      } else {
        const FormulaReport r = verify_intersection_formula(inst.config);
        lhs = r.lhs;
        rhs = r.rhs;
      }
      bool ok = lhs == rhs;
      if (ok && cfg.oracle != Oracle::Formula) {
        const auto bfs = bfs_to_family(inst.config.ambient(), family_for(inst.config, prop));
        ok = bfs && *bfs == rhs;
      }
      max_lhs = std::max(max_lhs, lhs);
      if (ok) {
        ++agreements;
      } else if (!first_bad) {
        first_bad = t;
        json dump = io::to_json(inst.config);
        dump["trial"] = t;
        dump["trial_seed"] = o.seed;
        write_file(cfg.dump_path, dump.dump(2) + "\n");
        err << "disagreement at trial " << t << " (lhs " << lhs << ", rhs " << rhs << "); instance written to "
            << cfg.dump_path << '\n';
      }
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << json{{"trials", cfg.trials},
                {"agreements", agreements},
                {"rejections", rejections},
                {"max_lhs", max_lhs},
                {"wall_time", wall}}
               .dump()
        << '\n';
    return int(agreements == cfg.trials ? kOk : kDisagreement);
  });
}

int cmd_export_dot(const ExportOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.radius < 0) throw Error(ErrorCode::InvalidArgument, "radius must be non-negative");
    std::optional<CycleConfiguration> cfg;
    std::optional<LatticeBasis> center;
    if (opts.instance_path) {
      cfg.emplace(io::configuration_from_json(io::read_file(*opts.instance_path)));
      center.emplace(cfg->ambient());
    } else {
      if (opts.n < 2) throw Error(ErrorCode::InvalidArgument, "n must be at least 2");
      center.emplace(LatticeBasis::standard(PAdicContext(opts.p), opts.n));
    }
    const Ball ball = explore_ball(*center, *center, opts.radius);
    std::set<ClassKey> highlight;
    if (cfg && cfg->dim() == 2 && cfg->cycles().size() == 2) {
      const Properness prop = properness_check(*cfg);
      if (prop.kind == ProperKind::Proper0Dim || prop.kind == ProperKind::EmptyIntersection) {
        // F-vertices inside the ball have spread at most radius + dist({M}, F_0).
        const FFamily f = build_F(*cfg);
        const std::int64_t b0 = dist(*center, f.vertex(std::vector<std::int64_t>(2, 0)));
        highlight = window_keys(*center, f, opts.radius + b0);
      }
    }
    json side = io::to_json(ball, center->ctx(), opts.radius);
    json marked = json::array();
    for (std::size_t i = 0; i < ball.nodes.size(); ++i)
      if (highlight.count(ball.nodes[i].key)) marked.push_back(i);
    side["highlight"] = marked;
    write_file(opts.out + ".dot", to_dot(ball, highlight));
    write_file(opts.out + ".json", side.dump(2) + "\n");
    out << json{{"nodes", ball.nodes.size()}, {"edges", ball.edges.size()}, {"highlighted", marked.size()}}.dump()
        << '\n';
    return int(kOk);
  });
}

}  // namespace btpgl::cli
