#include "btpgl/io.hpp"

#include <fstream>
#include <sstream>

#include "btpgl/errors.hpp"

namespace btpgl::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, "field '" + where + "': " + what);
}

const json& field(const json& j, const char* name, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) fail(where.empty() ? name : where + "." + name, "missing");
  return *it;
}

std::int64_t int_field(const json& j, const char* name, const std::string& where) {
  const json& v = field(j, name, where);
  if (!v.is_number_integer()) fail(where.empty() ? name : where + "." + name, "expected an integer");
  return v.get<std::int64_t>();
}

Vector vector_from_json(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  if (j.size() != n) fail(where, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(scalar_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

PAdicContext context_from_json(const json& j) {
  std::int64_t p = int_field(j, "p", "");
  try {
    return PAdicContext(p);
  } catch (const Error& e) {
    fail("p", e.what());
  }
}

std::size_t dim_from_json(const json& j) {
  std::int64_t n = int_field(j, "n", "");
  if (n < 1) fail("n", "must be positive");
  return static_cast<std::size_t>(n);
}

LatticeBasis lattice_from_json(const PAdicContext& ctx, std::size_t n, const json& j, const std::string& where) {
  Matrix m = matrix_from_json(j, where);
  if (m.rows() != n || m.cols() != n) fail(where, "expected an " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  try {
    return LatticeBasis(ctx, std::move(m));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

json fp_columns(const FpMatrix& m) {
  json cols = json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    json col = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) col.push_back(m(r, c));
    cols.push_back(col);
  }
  return cols;
}

json columns_json(const Matrix& m) {
  json cols = json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    json col = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) col.push_back(to_json(m(r, c)));
    cols.push_back(col);
  }
  return cols;
}

}  // namespace

json to_json(const Scalar& x) { return x.to_string(); }

Scalar scalar_from_json(const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Scalar(mpz_class(j.dump(), 10));
    if (j.is_string()) return Scalar::parse(j.get<std::string>());
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where, "expected a scalar string \"a\" or \"a/b\"");
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a nonempty array of rows");
  if (!j[0].is_array()) fail(where + "[0]", "expected an array");
  const std::size_t cols = j[0].size();
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    rows.push_back(vector_from_json(j[r], cols, where + "[" + std::to_string(r) + "]"));
  }
  return Matrix::from_rows(rows, cols);
}

LatticeBasis ambient_from_json(const json& j) {
  PAdicContext ctx = context_from_json(j);
  std::size_t n = dim_from_json(j);
  if (j.contains("lattice_M")) return lattice_from_json(ctx, n, j["lattice_M"], "lattice_M");
  return LatticeBasis::standard(ctx, n);
}

json to_json(const CycleConfiguration& cfg) {
  json j;
  j["p"] = cfg.ctx().p();
  j["n"] = cfg.dim();
  j["lattice_M"] = to_json(cfg.ambient().matrix());
  json cycles = json::array();
  for (const auto& c : cfg.cycles()) {
    if (c.equation) {
      json coeffs = json::array();
      for (const auto& a : c.equation->coefficients()) coeffs.push_back(to_json(a));
      cycles.push_back({{"kind", "hyperplane"}, {"coefficients", coeffs}});
    } else {
      cycles.push_back({{"kind", "submodule"}, {"columns", columns_json(c.module.coordinates())}});
    }
  }
  j["cycles"] = cycles;
  return j;
}

CycleConfiguration configuration_from_json(const json& j) {
  LatticeBasis m = ambient_from_json(j);
  const std::size_t n = m.dim();
  const json& cycles = field(j, "cycles", "");
  if (!cycles.is_array()) fail("cycles", "expected an array");
  std::vector<LinearCycle> out;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const std::string where = "cycles[" + std::to_string(i) + "]";
    const json& c = cycles[i];
    const json& kind = field(c, "kind", where);
    try {
      if (kind == "hyperplane") {
        Vector a = vector_from_json(field(c, "coefficients", where), n, where + ".coefficients");
        out.push_back(LinearCycle::hyperplane(DualForm(m, std::move(a))));
      } else if (kind == "submodule") {
        const json& cols = field(c, "columns", where);
        if (!cols.is_array()) fail(where + ".columns", "expected an array of columns");
        std::vector<Vector> vs;
        for (std::size_t k = 0; k < cols.size(); ++k) {
          vs.push_back(vector_from_json(cols[k], n, where + ".columns[" + std::to_string(k) + "]"));
        }
        out.push_back(LinearCycle::submodule(SplitSubmodule(m, Matrix::from_columns(vs, n))));
      } else {
        fail(where + ".kind", "expected \"hyperplane\" or \"submodule\"");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      fail(where, e.what());
    }
  }
  try {
    return CycleConfiguration(m, std::move(out));
  } catch (const Error& e) {
    fail("cycles", e.what());
  }
}

LatticePair lattice_pair_from_json(const json& j) {
  PAdicContext ctx = context_from_json(j);
  std::size_t n = dim_from_json(j);
  const json& ls = field(j, "lattices", "");
  if (!ls.is_array() || ls.size() != 2) fail("lattices", "expected exactly two matrices");
  return LatticePair{lattice_from_json(ctx, n, ls[0], "lattices[0]"), lattice_from_json(ctx, n, ls[1], "lattices[1]")};
}

json to_json(const LatticePair& pair) {
  return {{"p", pair.first.ctx().p()},
          {"n", pair.first.dim()},
          {"lattices", json::array({to_json(pair.first.matrix()), to_json(pair.second.matrix())})}};
}

json to_json(const FormulaReport& r, const Properness& prop) {
  return {{"lhs", r.lhs}, {"rhs", r.rhs}, {"agree", r.agree}, {"properness", std::string(to_string(prop.kind))}};
}

json to_json(const CycleDecomposition& d, const Properness& prop) {
  json dec = {{"generic_component", {{"rank", d.generic_component.rank()},
                                     {"columns", columns_json(d.generic_component.coordinates())}}},
              {"generic_multiplicity", d.generic_multiplicity},
              {"special_component", {{"dim", d.special_component.cols()}, {"columns", fp_columns(d.special_component)}}},
              {"special_multiplicity", d.special_multiplicity}};
  return {{"properness", std::string(to_string(prop.kind))}, {"r0", prop.r0}, {"decomposition", dec}};
}

json to_json(const Ball& ball, const PAdicContext& ctx, std::int64_t radius) {
  json nodes = json::array();
  for (const auto& node : ball.nodes) {
    nodes.push_back({{"key", node.key.hex()}, {"depth", node.depth}, {"matrix", to_json(node.coordinates)}});
  }
  json edges = json::array();
  for (const auto& [a, b] : ball.edges) edges.push_back(json::array({a, b}));
  const std::size_t n = ball.nodes.empty() ? 0 : ball.nodes.front().coordinates.rows();
  return {{"p", ctx.p()}, {"n", n}, {"radius", radius}, {"nodes", nodes}, {"edges", edges}};
}

ReportRecord report_from_json(const json& j) {
  if (!j.is_object()) fail("", "report must be an object");
  ReportRecord r;
  auto opt_int = [&](const char* name) -> std::optional<std::int64_t> {
    if (!j.contains(name)) return std::nullopt;
    if (!j[name].is_number_integer()) fail(name, "expected an integer");
    return j[name].get<std::int64_t>();
  };
  r.number = opt_int("number");
  r.lhs = opt_int("lhs");
  r.rhs = opt_int("rhs");
  if (j.contains("agree")) {
    if (!j["agree"].is_boolean()) fail("agree", "expected a boolean");
    r.agree = j["agree"].get<bool>();
  }
  if (j.contains("properness")) {
    if (!j["properness"].is_string()) fail("properness", "expected a string");
    r.properness = j["properness"].get<std::string>();
    static const std::vector<std::string> kinds = {"Proper0Dim", "ProperHigherDim", "Improper", "EmptyIntersection"};
    if (std::find(kinds.begin(), kinds.end(), r.properness) == kinds.end()) fail("properness", "unknown kind");
  }
  if (r.lhs.has_value() != r.rhs.has_value() || r.lhs.has_value() != r.agree.has_value()) {
    fail("lhs/rhs/agree", "must appear together");
  }
  if (j.contains("decomposition")) {
    const json& d = j["decomposition"];
    const json& g = field(d, "generic_component", "decomposition");
    const json& s = field(d, "special_component", "decomposition");
    if (int_field(d, "generic_multiplicity", "decomposition") != 1) fail("decomposition.generic_multiplicity", "must be 1");
    r.special_multiplicity = int_field(d, "special_multiplicity", "decomposition");
    r.generic_rank = static_cast<std::size_t>(int_field(g, "rank", "decomposition.generic_component"));
    r.special_dim = static_cast<std::size_t>(int_field(s, "dim", "decomposition.special_component"));
    if (!field(g, "columns", "decomposition.generic_component").is_array() ||
        !field(s, "columns", "decomposition.special_component").is_array()) {
      fail("decomposition", "component columns must be arrays");
    }
  }
  if (!r.number && !r.lhs && !r.special_multiplicity) fail("", "report carries no result");
  return r;
}

json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, source + ": " + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

}  // namespace btpgl::io
