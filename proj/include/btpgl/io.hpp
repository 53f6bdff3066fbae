#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "btpgl/building.hpp"
#include "btpgl/cycles.hpp"

namespace btpgl::io {

using json = nlohmann::json;

// Scalars are strings "a" or "a/b"; bare JSON integers are accepted on input.
json to_json(const Scalar& x);
Scalar scalar_from_json(const json& j, const std::string& where);

// Matrices are row-major arrays of scalar strings.
json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& where);

/// {"p", "n", "lattice_M", "cycles": [{"kind": "hyperplane", "coefficients"}
/// | {"kind": "submodule", "columns"}]}. Submodule columns are given in
/// coordinates of lattice_M; lattice_M defaults to the standard lattice.
json to_json(const CycleConfiguration& cfg);
CycleConfiguration configuration_from_json(const json& j);

/// {"p", "n", "lattices": [A, B]} for distance queries.
struct LatticePair {
  LatticeBasis first;
  LatticeBasis second;
};
LatticePair lattice_pair_from_json(const json& j);
json to_json(const LatticePair& pair);

/// Lattice given by "lattice_M" (or the standard lattice) of an instance.
LatticeBasis ambient_from_json(const json& j);

json to_json(const FormulaReport& r, const Properness& prop);
json to_json(const CycleDecomposition& d, const Properness& prop);
json to_json(const Ball& ball, const PAdicContext& ctx, std::int64_t radius);

/// A parsed intersection or decomposition report; throws ParseError on schema violations.
struct ReportRecord {
  std::string properness;
  std::optional<std::int64_t> lhs, rhs, number;
  std::optional<bool> agree;
  std::optional<std::int64_t> special_multiplicity;
  std::optional<std::size_t> generic_rank, special_dim;
};
ReportRecord report_from_json(const json& j);

json parse_text(const std::string& text, const std::string& source);
json read_file(const std::string& path);

}  // namespace btpgl::io
