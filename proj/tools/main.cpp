#include <CLI11.hpp>

#include <iostream>

#include "btpgl/cli.hpp"
#include "btpgl/errors.hpp"

int main(int argc, char** argv) {
  using namespace btpgl;
  CLI::App app{"Intersection numbers of linear cycles and distances in the building of PGL(n)"};
  app.require_subcommand(1);

  std::string path;
  std::string oracle = "formula";
  std::string mode = "hyperplanes";
  cli::CampaignConfig campaign;
  cli::ExportOptions exp;
  std::string instance;

  auto* intersect = app.add_subcommand("intersect", "Intersection number or decomposition of an instance file");
  intersect->add_option("instance", path, "Instance JSON")->required();

  auto* distance = app.add_subcommand("dist", "Distance between the two lattices of a file");
  distance->add_option("pair", path, "Lattice-pair JSON")->required();
  distance->add_option("--oracle", oracle, "formula, bfs or both")->check(CLI::IsMember({"formula", "bfs", "both"}));

  auto* verify = app.add_subcommand("verify", "Seeded campaign comparing both sides of the intersection formula");
  verify->add_option("--seed", campaign.seed);
  verify->add_option("--trials", campaign.trials)->check(CLI::PositiveNumber);
  verify->add_option("--n", campaign.n);
  verify->add_option("--p", campaign.p);
  verify->add_option("--d", campaign.d);
  verify->add_option("--max-val", campaign.max_val);
  verify->add_option("--mode", mode, "hyperplanes, submodules or higherdim")
      ->check(CLI::IsMember({"hyperplanes", "submodules", "higherdim"}));
  verify->add_option("--oracle", oracle, "formula, bfs or both")->check(CLI::IsMember({"formula", "bfs", "both"}));
  verify->add_option("--out", campaign.dump_path, "Where to write an offending instance");

  auto* dot = app.add_subcommand("export-dot", "Write a ball of the building as DOT plus a JSON sidecar");
  dot->add_option("instance", instance, "Optional instance whose lattice is the center");
  dot->add_option("--n", exp.n);
  dot->add_option("--p", exp.p);
  dot->add_option("--radius", exp.radius);
  dot->add_option("--out", exp.out, "Output path prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kParseError;
  }

  try {
    if (*intersect) return cli::cmd_intersect(path, std::cout, std::cerr);
    if (*distance) return cli::cmd_dist(path, cli::parse_oracle(oracle), std::cout, std::cerr);
    if (*verify) {
      campaign.mode = parse_instance_mode(mode);
      campaign.oracle = cli::parse_oracle(oracle);
      return cli::cmd_verify(campaign, std::cout, std::cerr);
    }
    if (!instance.empty()) exp.instance_path = instance;
    return cli::cmd_export_dot(exp, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return cli::kParseError;
  }
}
