// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "btpgl/cli.hpp"
#include "btpgl/cycles.hpp"
#include "btpgl/errors.hpp"
#include "support.hpp"

using namespace btpgl;
using btpgl::testing::mat;
using btpgl::testing::Rng;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

DualForm form(const LatticeBasis& m, const std::vector<Scalar>& a) { return DualForm(m, Vector(a)); }

Scalar pow_p(std::int64_t p, std::int64_t e) { return Scalar::power(mpz_class(static_cast<long>(p)), e); }

// Everything the invariance checks compare.
struct Summary {
  std::int64_t number = 0;
  std::int64_t distance = 0;
  std::int64_t special = -1;
  friend bool operator==(const Summary&, const Summary&) = default;
};

Summary summarize(const CycleConfiguration& cfg) {
  const Properness prop = properness_check(cfg);
  Summary s;
  if (prop.kind == ProperKind::ProperHigherDim) {
    CycleDecomposition d = decompose_intersection(cfg);
    s.number = equation_minor_valuation(cfg);
    s.distance = d.special_multiplicity;
    s.special = static_cast<std::int64_t>(d.special_component.cols());
  } else {
    FormulaReport r = verify_intersection_formula(cfg);
    s.number = r.lhs;
    s.distance = r.rhs;
  }
  return s;
}

CycleConfiguration rebuild(const LatticeBasis& ambient, const CycleConfiguration& cfg,
                           const std::function<LinearCycle(const LinearCycle&)>& map_cycle) {
  std::vector<LinearCycle> cycles;
  for (const auto& c : cfg.cycles()) cycles.push_back(map_cycle(c));
  return CycleConfiguration(ambient, std::move(cycles));
}

GeneratedInstance random_for_invariance(std::uint64_t seed, std::size_t t) {
  RandomInstanceOptions o;
  o.seed = seed;
  o.n = 2 + t % 3;
  o.p = t % 2 == 0 ? 2 : 3;
  o.max_val = 3;
  switch (t % 3) {
    case 0: o.mode = InstanceMode::Hyperplanes; o.d = o.n; break;
    case 1: o.mode = InstanceMode::Submodules; o.d = 2; break;
    default: o.mode = InstanceMode::HigherDim; o.n = 3 + t % 2; o.d = 2; break;
  }
  return random_instance(o);
}

// 1. Intersection number equals distance to F on random proper instances.
Outcome intersection_formula_campaign() {
  const auto start = Clock::now();
  std::size_t total = 0, agree = 0;
  std::int64_t max_lhs = 0;
  for (std::size_t n : {2, 3, 4}) {
    for (std::int64_t p : {2, 3, 5}) {
      for (std::size_t t = 0; t < 500; ++t) {
        RandomInstanceOptions o;
        o.seed = cli::trial_seed(1000 * n + static_cast<std::uint64_t>(p), t);
        o.n = n;
        o.p = p;
        o.max_val = 4;
        if (t % 2 == 0) {
          o.mode = InstanceMode::Hyperplanes;
          o.d = n;
        } else {
          o.mode = InstanceMode::Submodules;
          o.d = 2 + (t / 2) % (n - 1);
        }
        FormulaReport r = verify_intersection_formula(random_instance(o).config);
        ++total;
        if (r.agree && r.lhs == r.rhs) ++agree;
        max_lhs = std::max(max_lhs, r.lhs);
      }
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream os;
  os << agree << "/" << total << " agree, max intersection number " << max_lhs << ", " << secs << " s";
  return {agree == total && secs < 300.0, os.str()};
}

// 2. Invariant-factor distance equals BFS distance.
Outcome distance_vs_bfs() {
  Rng rng(2);
  std::size_t pairs = 0, agree = 0;
  std::map<std::int64_t, std::size_t> histogram;
  for (std::size_t n : {2, 3}) {
    for (std::int64_t p : {2, 3}) {
      const PAdicContext ctx(p);
      std::size_t accepted = 0;
      while (accepted < 200) {
        LatticeBasis a(ctx, rng.nonsingular(n, p, 2));
        LatticeBasis b = a;
        if (accepted % 2 == 0) {
          b = LatticeBasis(ctx, rng.nonsingular(n, p, 2));
        } else {
          // a U diag(p^k) W with k spread at most 4
          std::vector<Scalar> d;
          for (std::size_t i = 0; i < n; ++i) d.push_back(pow_p(p, rng.uniform(0, 4)));
          b = LatticeBasis(ctx, a.matrix() * rng.unimodular(n, p) * Matrix::diagonal(d) * rng.unimodular(n, p));
        }
        const std::int64_t formula = dist(a, b);
        if (formula > 4) continue;
        ++accepted;
        ++pairs;
        ++histogram[formula];
        if (bfs_dist(a, a, {class_key(a, b)}, 4) == std::optional<std::int64_t>(formula)) ++agree;
      }
    }
  }
  std::ostringstream os;
  os << agree << "/" << pairs << " pairs agree; distances";
  for (const auto& [d, c] : histogram) os << " " << d << ":" << c;
  return {agree == pairs, os.str()};
}

// 3. Vertex degree in the building.
Outcome building_degree() {
  Rng rng(3);
  std::ostringstream os;
  bool ok = true;
  auto check = [&](std::size_t n, std::int64_t p, std::size_t expected) {
    const PAdicContext ctx(p);
    auto ref = LatticeBasis::standard(ctx, n);
    LatticeBasis l(ctx, rng.nonsingular(n, p, 2));
    auto ns = neighbors(ref, l);
    std::set<ClassKey> keys;
    bool local = ns.size() == expected;
    for (const auto& x : ns) {
      keys.insert(class_key(ref, x));
      local = local && adjacent(l, x) && adjacent(x, l);
      std::size_t back = 0;
      for (const auto& y : neighbors(ref, x)) back += class_equal(y, l) ? 1 : 0;
      local = local && back == 1;
    }
    local = local && keys.size() == ns.size();
    os << " (n=" << n << ",p=" << p << "):" << ns.size();
    ok = ok && local;
  };
  for (std::int64_t p : {2, 3, 5, 7}) check(2, p, static_cast<std::size_t>(p + 1));
  check(3, 2, 14);
  check(3, 3, 26);
  return {ok, "degrees" + os.str()};
}

// 4. Two points on the projective line: three-way agreement.
Outcome projective_line_family() {
  bool ok = true;
  std::ostringstream os;
  for (std::int64_t p : {2, 3}) {
    const PAdicContext ctx(p);
    auto m = LatticeBasis::standard(ctx, 2);
    for (std::int64_t e = 0; e <= 5; ++e) {
      std::vector<DualForm> forms{form(m, {Scalar(1), Scalar(0)}), form(m, {Scalar(1), pow_p(p, e)})};
      const std::int64_t number = intersect_hyperplanes(forms);
      std::vector<LinearCycle> cs{LinearCycle::hyperplane(forms[0]), LinearCycle::hyperplane(forms[1])};
      FFamily f = build_F(CycleConfiguration(m, cs));
      const std::int64_t d = dist_to_F(m, f);
      bool local = number == e && d == e;
      if (e <= 4) local = local && bfs_dist(m, m, window_keys(m, f, 2 * d), e + 1) == std::optional<std::int64_t>(e);
      if (!local) os << " mismatch at p=" << p << " m=" << e;
      ok = ok && local;
    }
  }
  return {ok, ok ? "m = 0..5, p in {2,3}: number, distance and BFS agree" : os.str()};
}

// 5. Special multiplicity of the worked family, across complements and bases.
Outcome worked_family_multiplicity() {
  Rng rng(5);
  bool ok = true;
  std::ostringstream os;
  std::size_t complements_checked = 0, bases_checked = 0;
  for (std::int64_t p : {2, 3}) {
    const PAdicContext ctx(p);
    auto m = LatticeBasis::standard(ctx, 3);
    for (std::int64_t e = 0; e <= 4; ++e) {
      Matrix n1 = mat({{1, 0}, {0, 1}, {0, 0}});
      Matrix n2 = mat({{1, 0}, {0, 1}, {0, 0}});
      n2(2, 1) = pow_p(p, e);
      std::vector<LinearCycle> cs{LinearCycle::submodule(SplitSubmodule(m, n1)),
                                  LinearCycle::submodule(SplitSubmodule(m, n2))};
      CycleConfiguration cfg(m, cs);
      const std::int64_t mult = decompose_intersection(cfg).special_multiplicity;
      bool local = mult == e;

      HigherDimParts parts = higher_dim_parts(cfg);
      std::set<std::string> seen;
      for (int choice = 0; choice < 6; ++choice) {
        std::vector<SplitSubmodule> comps;
        std::string signature;
        for (const auto& c : default_complements(parts)) {
          Matrix v = c.coordinates();
          const Scalar t(choice);
          for (std::size_t i = 0; i < 3; ++i) v(i, 0) = v(i, 0) + t * parts.l0.coordinates()(i, 0);
          v = v.scaled(Scalar(rng.unit(p)));
          for (std::size_t i = 0; i < 3; ++i) signature += v(i, 0).to_string() + ",";
          comps.emplace_back(m, v);
        }
        seen.insert(signature);
        local = local && dist_to_F(m, higher_dim_family(parts, comps)) == mult;
      }
      complements_checked += seen.size();
      local = local && seen.size() >= 5;

      for (int trial = 0; trial < 10; ++trial) {
        Matrix u = rng.unimodular(3, p);
        LatticeBasis m2(ctx, u);  // same lattice, new basis
        Matrix uinv = inverse(u);
        CycleConfiguration moved = rebuild(m2, cfg, [&](const LinearCycle& c) {
          return LinearCycle::submodule(SplitSubmodule(m2, uinv * c.module.coordinates()));
        });
        local = local && decompose_intersection(moved).special_multiplicity == mult;
        ++bases_checked;
      }
      if (!local) os << " failure at p=" << p << " m=" << e;
      ok = ok && local;
    }
  }
  if (ok) {
    os << "multiplicity m for m = 0..4, p in {2,3}; " << complements_checked << " distinct complements, "
       << bases_checked << " changes of basis";
  }
  return {ok, os.str()};
}

// 6. Apartment distance can undercut the intersection number.
Outcome apartment_versus_number() {
  const PAdicContext p2(2);
  auto m = LatticeBasis::standard(p2, 3);
  std::vector<DualForm> forms{form(m, {Scalar(1), Scalar(0), Scalar(0)}), form(m, {Scalar(1), Scalar(2), Scalar(0)}),
                              form(m, {Scalar(1), Scalar(0), Scalar(2)})};
  Matrix a(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) a(j, i) = forms[i].coefficients()[j];
  auto tri = triangularize(p2, a);
  std::vector<std::int64_t> diag;
  for (std::size_t i = 0; i < 3; ++i) diag.push_back(val(p2, tri.b(i, i)).value());
  ApartmentDemoReport demo = apartment_distance_demo(forms);
  FFamily ap = hyperplane_apartment(forms);
  const bool bfs_ok = bfs_dist(m, m, window_keys(m, ap, 2 * demo.dist_to_apartment), 3) ==
                      std::optional<std::int64_t>(demo.dist_to_apartment);
  bool ok = diag == std::vector<std::int64_t>{0, 1, 1} && demo.dist_to_apartment == 1 &&
            demo.intersection_number == 2 && bfs_ok;

  // Random instances that are proper on the generic fibre only: all forms
  // share one reduction, so the special fibres meet in a plane or more.
  Rng rng(6);
  std::size_t checked = 0, holds = 0, strict = 0;
  while (checked < 200) {
    const std::size_t n = 3 + checked % 2;
    const std::int64_t p = checked % 4 < 2 ? 2 : 3;
    const PAdicContext ctx(p);
    auto mm = LatticeBasis::standard(ctx, n);
    Matrix base = rng.integral(n, 1, p, 0);
    if (min_valuation(ctx, base).is_infinite()) continue;
    std::vector<DualForm> fs;
    for (std::size_t i = 0; i < n; ++i) {
      Vector v = rng.integral(n, 1, p, 3).column(0);
      const Scalar u(rng.unit(p));
      for (std::size_t j = 0; j < n; ++j) v[j] = u * base(j, 0) + Scalar(p) * v[j];
      fs.push_back(DualForm::primitive(mm, v));
    }
    std::vector<LinearCycle> cs;
    for (const auto& f : fs) cs.push_back(LinearCycle::hyperplane(f));
    try {
      if (properness_check(CycleConfiguration(mm, cs)).kind != ProperKind::Improper) continue;
      ApartmentDemoReport r = apartment_distance_demo(fs);
      ++checked;
      if (r.dist_to_apartment <= r.intersection_number) ++holds;
      if (r.dist_to_apartment < r.intersection_number) ++strict;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ImproperGenericIntersection) throw;
    }
  }
  ok = ok && holds == checked;
  std::ostringstream os;
  os << "constructed instance: diagonal valuations (" << diag[0] << "," << diag[1] << "," << diag[2]
     << "), distance " << demo.dist_to_apartment << " < number " << demo.intersection_number << "; " << holds << "/"
     << checked << " random instances satisfy distance <= number (" << strict << " strictly)";
  return {ok, os.str()};
}

// 7. Invariance under change of basis, unit scaling, p-power scaling and permutation.
Outcome invariance_suite() {
  Rng rng(7);
  std::size_t fails[4] = {0, 0, 0, 0};
  for (std::size_t t = 0; t < 100; ++t) {
    for (int kind = 0; kind < 4; ++kind) {
      GeneratedInstance inst = random_for_invariance(cli::trial_seed(70 + static_cast<std::uint64_t>(kind), t), t);
      const CycleConfiguration& cfg = inst.config;
      const PAdicContext& ctx = cfg.ctx();
      const std::size_t n = cfg.dim();
      const std::int64_t p = ctx.p();
      const Summary base = summarize(cfg);
      bool ok = true;
      switch (kind) {
        case 0: {  // automorphism B of M applied to every cycle, forms via the dual transform
          Matrix b = rng.unimodular(n, p);
          CycleConfiguration moved = rebuild(cfg.ambient(), cfg, [&](const LinearCycle& c) {
            if (c.equation) return LinearCycle::hyperplane(transform_dual_form(b, *c.equation));
            return LinearCycle::submodule(SplitSubmodule(cfg.ambient(), b * c.module.coordinates()));
          });
          ok = summarize(moved) == base;
          LatticeBasis l1(ctx, rng.nonsingular(n, p, 2)), l2(ctx, rng.nonsingular(n, p, 2));
          ok = ok && dist(LatticeBasis(ctx, b * l1.matrix()), LatticeBasis(ctx, b * l2.matrix())) == dist(l1, l2);
          break;
        }
        case 1: {  // unit scaling of forms and of submodule bases
          CycleConfiguration scaled = rebuild(cfg.ambient(), cfg, [&](const LinearCycle& c) {
            const Scalar u(rng.unit(p), rng.unit(p));
            if (c.equation) return LinearCycle::hyperplane(c.equation->times_unit(u));
            return LinearCycle::submodule(SplitSubmodule(cfg.ambient(), c.module.coordinates().scaled(u)));
          });
          ok = summarize(scaled) == base;
          break;
        }
        case 2: {  // p-power scaling of M (cycles follow), of lattices and of F generators
          const Scalar s = pow_p(p, rng.uniform(-3, 3));
          LatticeBasis m2 = cfg.ambient().scaled(s);
          CycleConfiguration scaled = rebuild(m2, cfg, [&](const LinearCycle& c) {
            if (c.equation) return LinearCycle::hyperplane(DualForm(m2, c.equation->coefficients()));
            return LinearCycle::submodule(SplitSubmodule(m2, c.module.coordinates()));
          });
          ok = summarize(scaled) == base;
          LatticeBasis l1(ctx, rng.nonsingular(n, p, 2)), l2(ctx, rng.nonsingular(n, p, 2));
          ok = ok && dist(l1.scaled(s), l2.scaled(pow_p(p, rng.uniform(-3, 3)))) == dist(l1, l2);
          if (properness_check(cfg).kind != ProperKind::ProperHigherDim) {
            FFamily f = build_F(cfg);
            std::vector<SplitSubmodule> gens;
            for (const auto& g : f.generators())
              gens.emplace_back(g.ambient(), g.coordinates().scaled(pow_p(p, rng.uniform(0, 3))));
            ok = ok && dist_to_F(cfg.ambient(), FFamily(gens)) == base.distance;
          }
          break;
        }
        default: {  // permutation of the cycles
          std::vector<LinearCycle> cycles = cfg.cycles();
          std::shuffle(cycles.begin(), cycles.end(), rng.engine());
          ok = summarize(CycleConfiguration(cfg.ambient(), cycles)) == base;
          break;
        }
      }
      if (!ok) ++fails[kind];
    }
  }
  std::ostringstream os;
  os << "failures: basis " << fails[0] << "/100, unit " << fails[1] << "/100, p-power " << fails[2]
     << "/100, permutation " << fails[3] << "/100";
  return {fails[0] + fails[1] + fails[2] + fails[3] == 0, os.str()};
}

// 8. Triangularization diagonal against determinantal divisors.
Outcome triangularize_oracle() {
  Rng rng(8);
  std::size_t agree = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = static_cast<std::size_t>(1 + t % 4);
    const std::int64_t p = t % 3 == 0 ? 2 : (t % 3 == 1 ? 3 : 5);
    const PAdicContext ctx(p);
    Matrix a = rng.nonsingular(n, p, 4);
    auto tri = triangularize(ctx, a);
    std::vector<std::int64_t> diag;
    for (std::size_t i = 0; i < n; ++i) diag.push_back(val(ctx, tri.b(i, i)).value());
    std::sort(diag.begin(), diag.end());
    if (diag == testing::determinantal_exponents(ctx, a) && val(ctx, determinant(tri.b)) == val(ctx, determinant(a)))
      ++agree;
  }
  std::ostringstream os;
  os << agree << "/300 matrices match";
  return {agree == 300, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"intersection number equals distance to F (4500 random proper instances)", intersection_formula_campaign},
      {"invariant-factor distance equals BFS distance (800 pairs)", distance_vs_bfs},
      {"vertex degree and neighbor distinctness", building_degree},
      {"two points on the projective line, three-way agreement", projective_line_family},
      {"special multiplicity of the worked family", worked_family_multiplicity},
      {"distance to the apartment versus intersection number", apartment_versus_number},
      {"invariance suite", invariance_suite},
      {"triangularization against determinantal divisors", triangularize_oracle},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%s %zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
