// flatgraph: command-line front end for the flat-group P-graph library.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "flatgraph/cli.hpp"

namespace fc = flatgraph::cli;

namespace {

int finish(const fc::RunReport& report, std::ostream& out, bool timings, const std::string& report_path) {
  fc::print_report(out, report, timings);
  if (!report_path.empty()) {
    std::ofstream file(report_path);
    if (!file) throw fc::ConfigError(report_path + ": cannot write report");
    file << report.to_json().dump(2) << '\n';
  }
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build and check P-graphs of flat groups"};
  app.require_subcommand(1);
  bool timings = false;
  std::string report_path;
  app.add_flag("--timings", timings, "print per-stage timings");
  app.add_option("--report", report_path, "also write the run report as JSON");

  std::string config;
  std::optional<std::int64_t> bound;
  std::string pattern;
  std::optional<std::size_t> depth;
  std::string format = "json";
  std::string out_path;

  auto* validate = app.add_subcommand("validate", "check a model config");
  validate->add_option("config", config, "model config (JSON)")->required();

  auto* semigroups = app.add_subcommand("semigroups", "list admissible sign patterns and their generators");
  semigroups->add_option("config", config, "model config (JSON)")->required();
  semigroups->add_option("--bound", bound, "search bound for indicator elements");

  auto* graph = app.add_subcommand("graph", "build or check a depth-truncated P-graph");
  graph->require_subcommand(1);
  auto* build = graph->add_subcommand("build", "build a slice and export it");
  build->add_option("config", config, "model config (JSON)")->required();
  build->add_option("--pattern", pattern, "sign pattern, e.g. +1+2-3 (default: all +)");
  build->add_option("--depth", depth, "maximum generator word length");
  build->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  build->add_option("--out", out_path, "output file (default: stdout)");

  fc::CheckOptions check_options;
  std::string slice_path;
  std::string congruence;
  std::optional<std::size_t> regularity_depth;
  bool check_all = false;
  auto* check = graph->add_subcommand("check", "run structural checks on a slice");
  check->add_option("config", config, "model config (JSON)");
  check->add_option("--slice", slice_path, "check an exported JSON slice instead of building one");
  check->add_option("--pattern", pattern, "sign pattern, e.g. +1+2-3 (default: all +)");
  check->add_option("--depth", depth, "maximum generator word length");
  check->add_option("--which", check_options.which,
                    "rooted, degrees, factorization, fibers, regularity, product, tree, virtual, all")
      ->delimiter(',');
  check->add_flag("--all", check_all, "same as --which all");
  check->add_option("--regularity-depth", regularity_depth, "cone depth for the regularity check");
  check->add_option("--congruence", congruence, "sublattice c1,...,ck:m for the virtual check");

  std::string a_text, b_text;
  auto* qlo = app.add_subcommand("qlo", "minimal common upper bounds of two elements");
  qlo->add_option("config", config, "model config (JSON)")->required();
  qlo->add_option("a", a_text, "first element, e.g. 1,0")->required();
  qlo->add_option("b", b_text, "second element, e.g. 1,-1")->required();
  qlo->add_option("--pattern", pattern, "sign pattern (default: all +)");
  qlo->add_option("--bound", bound, "search radius");

  std::vector<std::string> slice_paths;
  auto* product = app.add_subcommand("product", "external product of exported slices");
  product->add_option("slices", slice_paths, "JSON slices")->required();
  product->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  product->add_option("--out", out_path, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return finish(fc::cmd_validate(config), std::cout, timings, report_path);
    if (*semigroups) return finish(fc::cmd_semigroups(config, bound, std::cout), std::cout, timings, report_path);
    if (*build) {
      fc::BuildOptions options{pattern, depth, format, out_path};
      return finish(fc::cmd_graph_build(config, options, std::cout), std::cerr, timings, report_path);
    }
    if (*check) {
      check_options.pattern = pattern;
      check_options.depth = depth;
      check_options.regularity_depth = regularity_depth;
      if (check_all || check_options.which.empty()) check_options.which = {"all"};
      if (!congruence.empty()) check_options.congruence = fc::parse_congruence(congruence);
      if (!slice_path.empty())
        return finish(fc::check_slice(fc::load_slice(slice_path), check_options), std::cout, timings, report_path);
      if (config.empty()) throw fc::ConfigError("graph check needs a config or --slice");
      return finish(fc::cmd_graph_check(config, check_options), std::cout, timings, report_path);
    }
    if (*qlo) {
      return finish(fc::cmd_qlo(config, pattern, fc::parse_element(a_text), fc::parse_element(b_text), bound, std::cout),
                    std::cout, timings, report_path);
    }
    if (*product) return finish(fc::cmd_product(slice_paths, format, out_path, std::cout), std::cerr, timings, report_path);
  } catch (const flatgraph::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
