// Tree products, external products and sublattice restriction of slices.
#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "flatgraph/errors.hpp"
#include "flatgraph/numeric.hpp"
#include "flatgraph/pgraph.hpp"

namespace flatgraph {

PGraphSlice tree_product_slice(const std::vector<GroupElement>& generators, const std::vector<std::size_t>& valencies,
                               std::size_t depth) {
  const std::size_t n = generators.size();
  if (valencies.size() != n) throw DimensionMismatch(n, valencies.size());
  for (auto d : valencies) {
    if (d == 0) throw InvalidSpec("tree valency must be positive");
  }
  const std::size_t rank = n == 0 ? 0 : generators.front().rank();

  // Multiplicity vectors with total at most depth.
  std::vector<std::vector<std::int64_t>> mults{std::vector<std::int64_t>(n, 0)};
  for (std::size_t i = 0; i < mults.size(); ++i) {
    std::int64_t total = 0;
    for (auto m : mults[i]) total += m;
    if (static_cast<std::size_t>(total) == depth) continue;
    // Only bump coordinates at or after the last nonzero one, so each vector appears once.
    std::size_t start = 0;
    for (std::size_t g = 0; g < n; ++g)
      if (mults[i][g] > 0) start = g;
    for (std::size_t g = start; g < n; ++g) {
      auto m = mults[i];
      ++m[g];
      mults.push_back(std::move(m));
    }
  }

  auto level_of = [&](const std::vector<std::int64_t>& m) {
    auto x = GroupElement::zero(rank);
    for (std::size_t g = 0; g < n; ++g) x += m[g] * generators[g];
    return x;
  };
  auto power = [](std::size_t base, std::int64_t e) {
    std::uint64_t r = 1;
    for (std::int64_t i = 0; i < e; ++i) r = static_cast<std::uint64_t>(checked_mul(static_cast<std::int64_t>(r), static_cast<std::int64_t>(base)));
    return r;
  };

  std::vector<Vertex> vertices;
  std::map<Vertex, std::size_t> id;
  for (const auto& m : mults) {
    std::vector<std::uint64_t> caps(n);
    std::uint64_t size = 1;
    for (std::size_t g = 0; g < n; ++g) {
      caps[g] = power(valencies[g], m[g]);
      size *= caps[g];
    }
    if (size > kMaxFiberSize) throw FiberTooLarge("tree product fiber exceeds the enumeration limit");
    const auto x = level_of(m);
    std::vector<std::uint64_t> r(n, 0);
    for (std::uint64_t i = 0; i < size; ++i) {
      id.emplace(Vertex{x, r}, vertices.size());
      vertices.push_back(Vertex{x, r});
      for (std::size_t g = n; g-- > 0;) {
        if (++r[g] < caps[g]) break;
        r[g] = 0;
      }
    }
  }
  std::vector<Edge> edges;
  for (std::size_t w = 0; w < vertices.size(); ++w) {
    const auto& v = vertices[w];
    for (std::size_t g = 0; g < n; ++g) {
      auto parent_level = v.level - generators[g];
      Vertex parent{parent_level, v.residues};
      parent.residues[g] /= valencies[g];
      auto it = id.find(parent);
      if (it != id.end() && it->second != w) edges.push_back(Edge{it->second, w, g});
    }
  }
  return PGraphSlice(generators, depth, std::move(vertices), std::move(edges));
}

PGraphSlice external_product(const std::vector<PGraphSlice>& slices) {
  if (slices.empty()) throw InvalidSpec("external product needs at least one factor");
  for (std::size_t i = 0; i < slices.size(); ++i) {
    if (!check_rooted_strongly_simple(slices[i]).passed())
      throw NotApplicable("factor " + std::to_string(i) + " is not a rooted strongly simple slice");
  }
  std::size_t rank = 0, gens = 0, depth = 0;
  std::vector<std::size_t> rank_offset, gen_offset;
  for (const auto& s : slices) {
    rank_offset.push_back(rank);
    gen_offset.push_back(gens);
    rank += s.rank();
    gens += s.generators().size();
    depth += s.depth();
  }

  std::vector<GroupElement> generators;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    for (const auto& g : slices[i].generators()) {
      std::vector<std::int64_t> c(rank, 0);
      std::copy(g.coords().begin(), g.coords().end(), c.begin() + static_cast<std::ptrdiff_t>(rank_offset[i]));
      generators.emplace_back(std::move(c));
    }
  }

  std::size_t total = 1;
  for (const auto& s : slices) {
    total *= s.vertices().size();
    if (total > kMaxFiberSize) throw FiberTooLarge("external product has too many vertices");
  }
  std::vector<std::size_t> stride(slices.size());
  {
    std::size_t st = 1;
    for (std::size_t i = slices.size(); i-- > 0;) {
      stride[i] = st;
      st *= slices[i].vertices().size();
    }
  }
  std::vector<Vertex> vertices;
  vertices.reserve(total);
  std::vector<Edge> edges;
  std::vector<std::size_t> tuple(slices.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<std::int64_t> level;
    std::vector<std::uint64_t> residues;
    for (std::size_t i = 0; i < slices.size(); ++i) {
      const auto& v = slices[i].vertices()[tuple[i]];
      level.insert(level.end(), v.level.coords().begin(), v.level.coords().end());
      residues.insert(residues.end(), v.residues.begin(), v.residues.end());
      for (auto e : slices[i].out_edges(tuple[i])) {
        const auto& edge = slices[i].edges()[e];
        const auto to = idx + (edge.to - tuple[i]) * stride[i];
        edges.push_back(Edge{idx, to, gen_offset[i] + edge.gen});
      }
    }
    vertices.push_back(Vertex{GroupElement(std::move(level)), std::move(residues)});
    for (std::size_t i = slices.size(); i-- > 0;) {
      if (++tuple[i] < slices[i].vertices().size()) break;
      tuple[i] = 0;
    }
  }

  std::optional<ConeSemigroup> semigroup;
  const bool all_cones = std::all_of(slices.begin(), slices.end(), [](const PGraphSlice& s) { return s.semigroup().has_value(); });
  if (all_cones) {
    std::size_t comps = 0;
    for (const auto& s : slices) comps += s.semigroup()->spec().components();
    if (rank <= kMaxRank && comps <= kMaxComponents) {
      std::vector<std::vector<std::int64_t>> weights;
      std::vector<std::int64_t> scales;
      SignPattern pattern;
      std::size_t comp_offset = 0;
      for (std::size_t i = 0; i < slices.size(); ++i) {
        const auto& spec = slices[i].semigroup()->spec();
        for (std::size_t j = 0; j < spec.components(); ++j) {
          std::vector<std::int64_t> row(rank, 0);
          const auto& w = spec.weight_row(j);
          std::copy(w.begin(), w.end(), row.begin() + static_cast<std::ptrdiff_t>(rank_offset[i]));
          weights.push_back(std::move(row));
          scales.push_back(spec.relative_scale(j));
        }
        const auto& p = slices[i].semigroup()->pattern();
        for (auto j : p.j_plus) pattern.j_plus.push_back(comp_offset + j);
        for (auto j : p.j_minus) pattern.j_minus.push_back(comp_offset + j);
        comp_offset += spec.components();
      }
      semigroup.emplace(FlatGroupSpec(rank, std::move(weights), std::move(scales)), std::move(pattern));
    }
  }
  return PGraphSlice(std::move(generators), depth, std::move(vertices), std::move(edges), std::move(semigroup));
}

PGraphSlice restrict_to_sublattice(const PGraphSlice& slice, const std::vector<std::int64_t>& functional,
                                   std::int64_t modulus) {
  if (functional.size() != slice.rank()) throw DimensionMismatch(slice.rank(), functional.size());
  if (modulus < 1) throw InvalidSpec("congruence modulus must be positive");
  auto in_sublattice = [&](const GroupElement& x) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < functional.size(); ++i) s = checked_add(s, checked_mul(functional[i], x[i]));
    return ((s % modulus) + modulus) % modulus == 0;
  };
  std::vector<std::size_t> kept;
  for (std::size_t l = 0; l < slice.levels().size(); ++l) {
    if (in_sublattice(slice.levels()[l])) kept.push_back(l);
  }
  // Minimal nonzero kept levels generate the restricted semigroup inside the slice.
  std::vector<GroupElement> generators;
  for (auto l : kept) {
    if (slice.levels()[l].is_zero()) continue;
    bool minimal = true;
    for (auto m : kept) {
      if (m != l && !slice.levels()[m].is_zero() && slice.level_precedes(m, l)) {
        minimal = false;
        break;
      }
    }
    if (minimal) generators.push_back(slice.levels()[l]);
  }
  std::sort(generators.begin(), generators.end());

  std::vector<Vertex> vertices;
  std::map<std::size_t, std::size_t> new_id;
  for (auto l : kept) {
    for (auto v = slice.fiber_begin(l); v < slice.fiber_end(l); ++v) {
      new_id.emplace(v, vertices.size());
      vertices.push_back(slice.vertices()[v]);
    }
  }
  std::vector<Edge> edges;
  for (auto l : kept) {
    for (std::size_t g = 0; g < generators.size(); ++g) {
      auto up = slice.level_index(slice.levels()[l] + generators[g]);
      if (!up) continue;
      for (auto w = slice.fiber_begin(*up); w < slice.fiber_end(*up); ++w) {
        const auto& anc = slice.ancestors(w, l);
        if (anc.size() != 1) throw NotApplicable("restriction needs a strongly simple slice");
        edges.push_back(Edge{new_id.at(anc.front()), new_id.at(w), g});
      }
    }
  }

  // Depth in the new generators: longest shortest word over the kept levels.
  std::map<GroupElement, std::size_t> word;
  std::deque<GroupElement> queue;
  const auto zero = GroupElement::zero(slice.rank());
  std::size_t depth = 0;
  if (slice.level_index(zero)) {
    word.emplace(zero, 0);
    queue.push_back(zero);
  }
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    depth = std::max(depth, word.at(x));
    for (const auto& g : generators) {
      auto y = x + g;
      if (slice.level_index(y) && word.emplace(y, word.at(x) + 1).second) queue.push_back(y);
    }
  }
  return PGraphSlice(std::move(generators), depth, std::move(vertices), std::move(edges));
}

VirtualProductReport virtually_product_subsemigroup(const PGraphSlice& slice,
                                                    const std::vector<std::int64_t>& functional,
                                                    std::int64_t modulus) {
  const auto sub = restrict_to_sublattice(slice, functional, modulus);
  VirtualProductReport report;
  report.generators = sub.generators();
  report.levels = sub.levels().size();
  report.vertices = sub.vertices().size();
  report.product = check_product_of_trees(sub);
  return report;
}

}  // namespace flatgraph
