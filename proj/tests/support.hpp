#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "flatgraph/coset_model.hpp"
#include "flatgraph/flat_core.hpp"

namespace flatgraph::testing {

inline PadicModel example_5_1(std::int64_t p) { return PadicModel({{p, {1, 0}}, {p, {0, 1}}}); }
inline PadicModel example_5_2(std::int64_t p) { return PadicModel({{p, {1, 0}}, {p, {1, 1}}, {p, {0, 1}}}); }
inline PadicModel example_5_3(std::int64_t p) { return PadicModel({{p, {1, 1}}, {p, {1, -1}}}); }
inline PadicModel coprime_2_3() { return PadicModel({{2, {1, 0}}, {3, {0, 1}}}); }

inline std::string config_path(const std::string& name) { return std::string(FLATGRAPH_SOURCE_DIR) + "/configs/" + name; }
inline std::string fixture_path(const std::string& name) { return std::string(FLATGRAPH_SOURCE_DIR) + "/tests/" + name; }

inline GroupElement random_element(std::mt19937_64& rng, std::size_t rank, std::int64_t radius) {
  std::uniform_int_distribution<std::int64_t> d(-radius, radius);
  std::vector<std::int64_t> c(rank);
  for (auto& x : c) x = d(rng);
  return GroupElement(std::move(c));
}

}  // namespace flatgraph::testing
