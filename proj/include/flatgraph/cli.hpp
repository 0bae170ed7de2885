#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "flatgraph/coset_model.hpp"
#include "flatgraph/errors.hpp"
#include "flatgraph/pgraph.hpp"

namespace flatgraph::cli {

using Json = nlohmann::ordered_json;

/// Malformed configuration or arguments; maps to exit status 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ModelConfig {
  CosetModel model;
  std::optional<std::size_t> depth;
  std::optional<std::int64_t> bound;
  std::optional<std::int64_t> norm_bound;
};

ModelConfig parse_config(const std::string& text, const std::string& source = "<config>");
ModelConfig load_config(const std::string& path);

// ---- serialization ----

Json to_json(const PGraphSlice& slice);
PGraphSlice slice_from_json(const Json& doc);
PGraphSlice load_slice(const std::string& path);
std::string to_dot(const PGraphSlice& slice);
/// "L(1,0)@(1,1,0)"
std::string vertex_name(const Vertex& v);

// ---- reports ----

struct CheckResult {
  std::string name;
  bool passed;
  std::string summary;
  /// Witness for a failure, result data otherwise.
  Json detail;
  /// Reported but not counted towards the exit status.
  bool informational = false;
};

struct RunReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> artifacts;
  std::vector<std::pair<std::string, double>> timings;

  bool passed() const;
  int exit_code() const { return passed() ? 0 : 1; }
  Json to_json() const;
};

void print_report(std::ostream& out, const RunReport& report, bool timings);

// ---- commands ----

RunReport cmd_validate(const std::string& path);

/// Prints the table of admissible patterns; each pattern is one check whose witness
/// carries its generators and scale exponents.
RunReport cmd_semigroups(const std::string& path, std::optional<std::int64_t> bound, std::ostream& out);

struct BuildOptions {
  std::string pattern;  // empty: all components expanding
  std::optional<std::size_t> depth;
  std::string format = "json";
  std::string out_path;  // empty: write to the stream
};

RunReport cmd_graph_build(const std::string& path, const BuildOptions& options, std::ostream& out);

struct Congruence {
  std::vector<std::int64_t> functional;
  std::int64_t modulus;
};

/// "1,1:2" -> functional (1,1), modulus 2.
Congruence parse_congruence(const std::string& text);

struct CheckOptions {
  std::string pattern;
  std::optional<std::size_t> depth;
  /// rooted, degrees, factorization, fibers, regularity, product, tree, virtual, all
  std::vector<std::string> which{"all"};
  std::optional<std::size_t> regularity_depth;
  std::optional<Congruence> congruence;
};

/// Checks a slice built from a config.
RunReport cmd_graph_check(const std::string& path, const CheckOptions& options);
/// Checks an exported slice as-is.
RunReport check_slice(const PGraphSlice& slice, const CheckOptions& options);

RunReport cmd_qlo(const std::string& path, const std::string& pattern, const GroupElement& a, const GroupElement& b,
                  std::optional<std::int64_t> bound, std::ostream& out);

RunReport cmd_product(const std::vector<std::string>& paths, const std::string& format, const std::string& out_path,
                      std::ostream& out);

/// "1,-1" or "(1,-1)"
GroupElement parse_element(const std::string& text);

}  // namespace flatgraph::cli
