#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "btpgl/cycles.hpp"

namespace btpgl::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 1,
  kImproper = 2,
  kDisagreement = 3,
  kResourceCap = 4,
};

enum class Oracle { Formula, Bfs, Both };

Oracle parse_oracle(std::string_view text);
std::string_view to_string(Oracle o);

/// Prints {"number": v} for a zero-dimensional instance or the decomposition
/// for a higher-dimensional one.
int cmd_intersect(const std::string& instance_path, std::ostream& out, std::ostream& err);

/// Distance between the two lattices of the file. Both mode prints the
/// formula value and the BFS value on separate lines.
int cmd_dist(const std::string& pair_path, Oracle oracle, std::ostream& out, std::ostream& err);

struct CampaignConfig {
  std::uint64_t seed = 1;
  std::size_t trials = 1;
  std::size_t n = 2;
  std::int64_t p = 2;
  std::size_t d = 2;
  std::int64_t max_val = 4;
  InstanceMode mode = InstanceMode::Hyperplanes;
  Oracle oracle = Oracle::Formula;
  std::string dump_path = "btpgl_disagreement.json";
};

/// Seed of trial `index` in a campaign started from `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t index);

int cmd_verify(const CampaignConfig& cfg, std::ostream& out, std::ostream& err);

struct ExportOptions {
  std::size_t n = 2;
  std::int64_t p = 2;
  std::int64_t radius = 1;
  std::string out = "ball";
  /// Optional instance: its lattice_M is the center, and for n = 2 with two
  /// cycles the vertices of F (the geodesic between the two ends) are highlighted.
  std::optional<std::string> instance_path;
};

/// Writes <out>.dot and <out>.json.
int cmd_export_dot(const ExportOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace btpgl::cli
