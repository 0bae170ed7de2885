#include <fstream>
#include <set>
#include <sstream>

#include "flatgraph/cli.hpp"
#include "flatgraph/numeric.hpp"

namespace flatgraph::cli {

namespace {

std::string position_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void only_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown field \"" + key + "\"");
  }
}

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

std::int64_t integer(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

std::vector<std::int64_t> integers(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(integer(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

ModelConfig parse_config(const std::string& text, const std::string& source) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(source + ": invalid JSON at " + position_of(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!doc.is_object()) throw ConfigError(source + ": top level must be an object");
  const auto& kind = require(doc, "model", source);
  if (!kind.is_string()) throw ConfigError(source + ".model: expected \"padic\" or \"tree\"");

  ModelConfig config{PadicModel({PadicRow{2, {1}}}), {}, {}, {}};
  if (kind == "padic") {
    only_keys(doc, {"model", "name", "rank", "rows", "defaults"}, source);
    const auto rank = integer(require(doc, "rank", source), source + ".rank");
    if (rank < 1 || rank > static_cast<std::int64_t>(kMaxRank))
      throw ConfigError(source + ".rank: must be in [1, " + std::to_string(kMaxRank) + "]");
    const auto& rows = require(doc, "rows", source);
    if (!rows.is_array() || rows.empty()) throw ConfigError(source + ".rows: expected a non-empty array");
    std::vector<PadicRow> parsed;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto where = source + ".rows[" + std::to_string(i) + "]";
      if (!rows[i].is_object()) throw ConfigError(where + ": expected an object");
      only_keys(rows[i], {"prime", "exponents"}, where);
      const auto prime = integer(require(rows[i], "prime", where), where + ".prime");
      if (!is_prime(prime)) throw NonPrimeModulus(prime);
      auto exps = integers(require(rows[i], "exponents", where), where + ".exponents");
      if (exps.size() != static_cast<std::size_t>(rank))
        throw ConfigError(where + ".exponents: expected " + std::to_string(rank) + " entries, got " +
                          std::to_string(exps.size()));
      parsed.push_back(PadicRow{prime, std::move(exps)});
    }
    config.model = PadicModel(std::move(parsed));
  } else if (kind == "tree") {
    only_keys(doc, {"model", "name", "valencies", "defaults"}, source);
    auto valencies = integers(require(doc, "valencies", source), source + ".valencies");
    if (valencies.empty()) throw ConfigError(source + ".valencies: expected at least one valency");
    for (std::size_t i = 0; i < valencies.size(); ++i) {
      if (valencies[i] < 2) throw ConfigError(source + ".valencies[" + std::to_string(i) + "]: must be at least 2");
    }
    config.model = TreeModel(std::move(valencies));
  } else {
    throw ConfigError(source + ".model: expected \"padic\" or \"tree\"");
  }

  if (doc.contains("defaults")) {
    const auto& d = doc.at("defaults");
    const auto where = source + ".defaults";
    if (!d.is_object()) throw ConfigError(where + ": expected an object");
    only_keys(d, {"depth", "bound", "norm_bound"}, where);
    if (d.contains("depth")) {
      const auto v = integer(d.at("depth"), where + ".depth");
      if (v < 0) throw ConfigError(where + ".depth: must be non-negative");
      config.depth = static_cast<std::size_t>(v);
    }
    if (d.contains("bound")) config.bound = integer(d.at("bound"), where + ".bound");
    if (d.contains("norm_bound")) config.norm_bound = integer(d.at("norm_bound"), where + ".norm_bound");
  }
  // Surfaces dimension and scale problems now rather than at first use.
  derive_flat_spec(config.model);
  return config;
}

ModelConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace flatgraph::cli
