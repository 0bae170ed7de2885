#include <fstream>
#include <sstream>

#include "flatgraph/cli.hpp"

namespace flatgraph::cli {

std::string vertex_name(const Vertex& v) {
  std::ostringstream os;
  os << 'L' << to_string(v.level) << "@(";
  for (std::size_t i = 0; i < v.residues.size(); ++i) os << (i ? "," : "") << v.residues[i];
  os << ')';
  return os.str();
}

Json to_json(const PGraphSlice& slice) {
  Json doc;
  Json levels = Json::array();
  for (std::size_t l = 0; l < slice.levels().size(); ++l)
    levels.push_back(Json{{"x", slice.levels()[l].coords()}, {"size", slice.fiber_size(l)}});
  Json vertices = Json::array();
  for (const auto& v : slice.vertices()) vertices.push_back(Json{{"level", v.level.coords()}, {"residues", v.residues}});
  Json edges = Json::array();
  for (const auto& e : slice.edges()) edges.push_back(Json{{"from", e.from}, {"to", e.to}, {"gen", e.gen}});
  Json gens = Json::array();
  for (const auto& g : slice.generators()) gens.push_back(g.coords());
  doc["levels"] = std::move(levels);
  doc["vertices"] = std::move(vertices);
  doc["edges"] = std::move(edges);
  doc["generators"] = std::move(gens);
  doc["depth"] = slice.depth();
  if (slice.semigroup()) {
    const auto& spec = slice.semigroup()->spec();
    doc["semigroup"] = Json{{"weights", spec.weights()},
                            {"scales", spec.relative_scales()},
                            {"pattern", to_string(slice.semigroup()->pattern())}};
  }
  return doc;
}

PGraphSlice slice_from_json(const Json& doc) {
  try {
    std::vector<GroupElement> gens;
    for (const auto& g : doc.at("generators")) gens.emplace_back(g.get<std::vector<std::int64_t>>());
    std::vector<Vertex> vertices;
    for (const auto& v : doc.at("vertices"))
      vertices.push_back(Vertex{GroupElement(v.at("level").get<std::vector<std::int64_t>>()),
                                v.at("residues").get<std::vector<std::uint64_t>>()});
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges"))
      edges.push_back(Edge{e.at("from").get<std::size_t>(), e.at("to").get<std::size_t>(), e.at("gen").get<std::size_t>()});
    std::optional<ConeSemigroup> semigroup;
    if (doc.contains("semigroup")) {
      const auto& s = doc.at("semigroup");
      FlatGroupSpec spec(gens.empty() ? vertices.front().level.rank() : gens.front().rank(),
                         s.at("weights").get<std::vector<std::vector<std::int64_t>>>(),
                         s.at("scales").get<std::vector<std::int64_t>>());
      auto pattern = SignPattern::parse(s.at("pattern").get<std::string>(), spec.components());
      semigroup.emplace(std::move(spec), std::move(pattern));
    }
    PGraphSlice slice(std::move(gens), doc.at("depth").get<std::size_t>(), std::move(vertices), std::move(edges),
                      std::move(semigroup));
    // The level table is derived; a mismatch means the file was edited inconsistently.
    if (doc.contains("levels")) {
      const auto& levels = doc.at("levels");
      if (levels.size() != slice.levels().size()) throw ConfigError("slice: level table does not match vertices");
      for (std::size_t l = 0; l < levels.size(); ++l) {
        if (levels[l].at("x").get<std::vector<std::int64_t>>() != slice.levels()[l].coords() ||
            levels[l].at("size").get<std::size_t>() != slice.fiber_size(l))
          throw ConfigError("slice: level table entry " + std::to_string(l) + " does not match vertices");
      }
    }
    return slice;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("slice: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("slice: ") + e.what());
  }
}

PGraphSlice load_slice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": invalid JSON: " + e.what());
  }
  return slice_from_json(doc);
}

std::string to_dot(const PGraphSlice& slice) {
  std::ostringstream os;
  os << "digraph pgraph {\n  rankdir=BT;\n";
  for (const auto& v : slice.vertices()) os << "  \"" << vertex_name(v) << "\";\n";
  for (const auto& e : slice.edges()) {
    os << "  \"" << vertex_name(slice.vertices()[e.from]) << "\" -> \"" << vertex_name(slice.vertices()[e.to])
       << "\" [label=\"" << e.gen << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace flatgraph::cli
