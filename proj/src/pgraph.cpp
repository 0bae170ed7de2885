#include "flatgraph/pgraph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include "flatgraph/errors.hpp"
#include "flatgraph/lattice.hpp"

namespace flatgraph {

namespace {

void merge_into(std::vector<std::size_t>& dst, const std::vector<std::size_t>& src) {
  if (src.empty()) return;
  std::vector<std::size_t> merged;
  merged.reserve(dst.size() + src.size());
  std::set_union(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(merged));
  dst = std::move(merged);
}

bool sorted_contains(const std::vector<std::size_t>& v, std::size_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace

PGraphSlice::PGraphSlice(std::vector<GroupElement> generators, std::size_t depth, std::vector<Vertex> vertices,
                         std::vector<Edge> edges, std::optional<ConeSemigroup> semigroup)
    : generators_(std::move(generators)), depth_(depth), semigroup_(std::move(semigroup)) {
  if (!vertices.empty()) rank_ = vertices.front().level.rank();
  else if (!generators_.empty()) rank_ = generators_.front().rank();
  for (const auto& g : generators_) {
    if (g.rank() != rank_) throw DimensionMismatch(rank_, g.rank());
  }
  for (const auto& v : vertices) {
    if (v.level.rank() != rank_) throw DimensionMismatch(rank_, v.level.rank());
  }

  std::vector<std::size_t> order(vertices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vertices[a] < vertices[b]; });
  std::vector<std::size_t> position(vertices.size());
  vertices_.reserve(vertices.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    position[order[i]] = i;
    vertices_.push_back(std::move(vertices[order[i]]));
  }
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (vertices_[i] == vertices_[i - 1]) throw std::invalid_argument("duplicate vertex in slice");
  }
  for (auto& e : edges) {
    if (e.from >= position.size() || e.to >= position.size() || e.gen >= generators_.size())
      throw std::invalid_argument("edge refers to a missing vertex or generator");
    e.from = position[e.from];
    e.to = position[e.to];
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.from, a.gen, a.to) < std::tie(b.from, b.gen, b.to);
  });
  edges_ = std::move(edges);
  index();
}

void PGraphSlice::index() {
  const std::size_t n = vertices_.size();
  level_offset_.clear();
  vertex_level_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || vertices_[i].level != vertices_[i - 1].level) {
      level_lookup_.emplace(vertices_[i].level, levels_.size());
      levels_.push_back(vertices_[i].level);
      level_offset_.push_back(i);
    }
    vertex_level_[i] = levels_.size() - 1;
  }
  level_offset_.push_back(n);
  const std::size_t nl = levels_.size();

  out_.assign(n, {});
  in_.assign(n, {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    out_[edges_[e].from].push_back(e);
    in_[edges_[e].to].push_back(e);
  }

  step_.assign(nl, std::vector<std::optional<std::size_t>>(generators_.size()));
  std::vector<std::size_t> indegree(nl, 0);
  for (std::size_t l = 0; l < nl; ++l) {
    for (std::size_t g = 0; g < generators_.size(); ++g) {
      step_[l][g] = level_index(levels_[l] + generators_[g]);
      if (step_[l][g]) ++indegree[*step_[l][g]];
    }
  }
  std::deque<std::size_t> ready;
  for (std::size_t l = 0; l < nl; ++l) {
    if (indegree[l] == 0) ready.push_back(l);
  }
  while (!ready.empty()) {
    const auto l = ready.front();
    ready.pop_front();
    level_order_.push_back(l);
    for (const auto& m : step_[l]) {
      if (m && --indegree[*m] == 0) ready.push_back(*m);
    }
  }
  if (level_order_.size() != nl) acyclic_ = false;

  level_le_.assign(nl, std::vector<bool>(nl, false));
  for (auto it = level_order_.rbegin(); it != level_order_.rend(); ++it) {
    const auto l = *it;
    level_le_[l][l] = true;
    for (const auto& m : step_[l]) {
      if (!m) continue;
      for (std::size_t u = 0; u < nl; ++u) {
        if (level_le_[*m][u]) level_le_[l][u] = true;
      }
    }
  }

  // Ancestor sets over all directed paths, in a topological order of the vertex graph.
  std::vector<std::size_t> vin(n, 0);
  for (const auto& e : edges_) ++vin[e.to];
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v) {
    if (vin[v] == 0) queue.push_back(v);
  }
  ancestors_.assign(n, std::vector<std::vector<std::size_t>>(nl));
  std::size_t processed = 0;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    ++processed;
    ancestors_[v][vertex_level_[v]] = {v};
    for (auto e : in_[v]) {
      const auto u = edges_[e].from;
      for (std::size_t l = 0; l < nl; ++l) merge_into(ancestors_[v][l], ancestors_[u][l]);
    }
    for (auto e : out_[v]) {
      if (--vin[edges_[e].to] == 0) queue.push_back(edges_[e].to);
    }
  }
  if (processed != n) acyclic_ = false;
}

std::optional<std::size_t> PGraphSlice::level_index(const GroupElement& x) const {
  auto it = level_lookup_.find(x);
  if (it == level_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> PGraphSlice::vertex_index(const Vertex& v) const {
  auto l = level_index(v.level);
  if (!l) return std::nullopt;
  auto first = vertices_.begin() + static_cast<std::ptrdiff_t>(fiber_begin(*l));
  auto last = vertices_.begin() + static_cast<std::ptrdiff_t>(fiber_end(*l));
  auto it = std::lower_bound(first, last, v);
  if (it == last || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::optional<std::size_t> PGraphSlice::level_step(std::size_t level, std::size_t gen) const {
  return step_[level][gen];
}

std::optional<std::size_t> PGraphSlice::root() const {
  auto l = level_index(GroupElement::zero(rank_));
  if (!l || fiber_size(*l) != 1) return std::nullopt;
  return fiber_begin(*l);
}

std::optional<MorphismWitness> morphism(const PGraphSlice& slice, std::size_t source, std::size_t target) {
  const auto ls = slice.level_of(source);
  if (!sorted_contains(slice.ancestors(target, ls), source)) return std::nullopt;
  return MorphismWitness{source, target, slice.levels()[slice.level_of(target)] - slice.levels()[ls]};
}

PGraphSlice build_slice(const ConeSemigroup& semigroup, const GeneratorSet& generators, const CosetModel& model,
                        std::size_t depth) {
  const auto spec = derive_flat_spec(model);
  if (!(spec == semigroup.spec())) throw InvalidSpec("coset model does not realize the semigroup's flat spec");
  const auto& sigma = generators.sigma;
  for (const auto& g : sigma) {
    if (!semigroup.contains(g) || g.is_zero()) throw InvalidSpec("generator " + to_string(g) + " is not in P");
  }

  std::set<GroupElement> levels{GroupElement::zero(spec.rank())};
  std::vector<GroupElement> frontier{GroupElement::zero(spec.rank())};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier) {
      for (const auto& g : sigma) {
        auto y = x + g;
        if (levels.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  std::vector<GroupElement> work(levels.begin(), levels.end());
  while (!work.empty()) {
    const auto x = work.back();
    work.pop_back();
    for (const auto& g : sigma) {
      auto y = x - g;
      if (semigroup.contains(y) && levels.insert(y).second) work.push_back(std::move(y));
    }
  }

  std::map<GroupElement, std::pair<std::size_t, std::vector<std::uint64_t>>> layout;
  std::vector<Vertex> vertices;
  for (const auto& x : levels) {
    layout.emplace(x, std::make_pair(vertices.size(), fiber_caps(spec, x)));
    auto f = fiber(model, semigroup, x);
    vertices.insert(vertices.end(), std::make_move_iterator(f.begin()), std::make_move_iterator(f.end()));
  }

  std::vector<Edge> edges;
  for (const auto& x : levels) {
    const auto& [x_offset, x_caps] = layout.at(x);
    for (std::size_t g = 0; g < sigma.size(); ++g) {
      auto it = layout.find(x + sigma[g]);
      if (it == layout.end()) continue;
      const auto& y = it->first;
      const auto& [y_offset, y_caps] = it->second;
      std::uint64_t y_size = 1;
      for (auto c : y_caps) y_size *= c;
      for (std::uint64_t i = 0; i < y_size; ++i) {
        const auto& w = vertices[y_offset + i];
        const auto parent = truncate(model, spec, x, y, w);
        edges.push_back(Edge{x_offset + fiber_index(x_caps, parent.residues), y_offset + i, g});
      }
    }
  }
  return PGraphSlice(sigma, depth, std::move(vertices), std::move(edges), semigroup);
}

StrongSimplicityReport check_rooted_strongly_simple(const PGraphSlice& slice) {
  StrongSimplicityReport report;
  report.root = slice.root();
  report.acyclic = slice.acyclic();
  const auto& levels = slice.levels();
  for (std::size_t e = 0; e < slice.edges().size(); ++e) {
    const auto& edge = slice.edges()[e];
    if (levels[slice.level_of(edge.to)] - levels[slice.level_of(edge.from)] != slice.generators()[edge.gen])
      report.bad_degree_edges.push_back(e);
  }
  std::set<std::pair<std::size_t, std::size_t>> endpoints;
  for (std::size_t e = 0; e < slice.edges().size(); ++e) {
    if (!endpoints.emplace(slice.edges()[e].from, slice.edges()[e].to).second) report.parallel_edges.push_back(e);
  }
  for (std::size_t v = 0; v < slice.vertices().size(); ++v) {
    if (report.root && v != *report.root && slice.in_edges(v).empty()) report.extra_sources.push_back(v);
    if (!report.root || !sorted_contains(slice.ancestors(v, slice.level_of(*report.root)), *report.root))
      report.unreachable.push_back(v);
    for (std::size_t l = 0; l < levels.size(); ++l) {
      if (!slice.level_precedes(l, slice.level_of(v))) continue;
      ++report.pairs_checked;
      const auto& anc = slice.ancestors(v, l);
      if (anc.size() > 1) report.violations.push_back({v, l, anc});
    }
  }
  return report;
}

LocalDegreeReport check_local_degrees(const PGraphSlice& slice) {
  LocalDegreeReport report;
  const auto& gens = slice.generators();
  std::vector<std::optional<std::size_t>> expected_out(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (slice.semigroup()) {
      expected_out[g] = static_cast<std::size_t>(scale(slice.semigroup()->spec(), gens[g]));
    } else if (auto l = slice.level_index(gens[g])) {
      expected_out[g] = slice.fiber_size(*l);
    }
  }
  for (std::size_t v = 0; v < slice.vertices().size(); ++v) {
    const auto l = slice.level_of(v);
    std::vector<std::size_t> outs(gens.size(), 0);
    std::vector<std::size_t> ins(gens.size(), 0);
    for (auto e : slice.out_edges(v)) ++outs[slice.edges()[e].gen];
    for (auto e : slice.in_edges(v)) ++ins[slice.edges()[e].gen];
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (slice.level_step(l, g) && expected_out[g] && outs[g] != *expected_out[g])
        report.violations.push_back({v, g, false, *expected_out[g], outs[g]});
      const bool has_below = slice.level_index(slice.levels()[l] - gens[g]).has_value();
      const std::size_t expected_in = has_below ? 1 : 0;
      if (ins[g] != expected_in) report.violations.push_back({v, g, true, expected_in, ins[g]});
    }
  }
  return report;
}

std::size_t count_factorizations(const PGraphSlice& slice, std::size_t source, std::size_t target,
                                 std::size_t middle_level) {
  const auto ls = slice.level_of(source);
  std::size_t count = 0;
  for (auto u : slice.ancestors(target, middle_level)) {
    if (sorted_contains(slice.ancestors(u, ls), source)) ++count;
  }
  return count;
}

FactorizationReport check_factorization(const PGraphSlice& slice) {
  FactorizationReport report;
  const std::size_t nl = slice.levels().size();
  for (std::size_t t = 0; t < slice.vertices().size(); ++t) {
    const auto lt = slice.level_of(t);
    for (std::size_t l = 0; l < nl; ++l) {
      if (!slice.level_precedes(l, lt)) continue;
      for (auto s : slice.ancestors(t, l)) {
        ++report.morphisms_checked;
        for (std::size_t m = 0; m < nl; ++m) {
          if (!slice.level_precedes(l, m) || !slice.level_precedes(m, lt)) continue;
          ++report.splits_checked;
          const auto c = count_factorizations(slice, s, t, m);
          if (c != 1) report.violations.push_back({s, t, m, c});
        }
      }
    }
  }
  return report;
}

std::vector<std::vector<std::vector<std::int64_t>>> level_expressions(const PGraphSlice& slice) {
  const std::size_t n = slice.generators().size();
  std::vector<std::set<std::vector<std::int64_t>>> expr(slice.levels().size());
  if (auto zero = slice.level_index(GroupElement::zero(slice.rank()))) {
    expr[*zero].insert(std::vector<std::int64_t>(n, 0));
  }
  for (auto l : slice.level_order()) {
    for (std::size_t g = 0; g < n; ++g) {
      auto m = slice.level_step(l, g);
      if (!m) continue;
      for (auto e : expr[l]) {
        ++e[g];
        expr[*m].insert(std::move(e));
      }
    }
  }
  std::vector<std::vector<std::vector<std::int64_t>>> out;
  out.reserve(expr.size());
  for (auto& s : expr) out.emplace_back(s.begin(), s.end());
  return out;
}

FiberRegularityReport check_fiber_regularity(const PGraphSlice& slice) {
  FiberRegularityReport report;
  const auto& gens = slice.generators();
  std::vector<std::optional<BigInt>> gen_size(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (auto l = slice.level_index(gens[g])) gen_size[g] = BigInt(slice.fiber_size(*l));
    else if (slice.semigroup()) gen_size[g] = scale(slice.semigroup()->spec(), gens[g]);
  }
  const auto expressions = level_expressions(slice);
  for (std::size_t l = 0; l < expressions.size(); ++l) {
    for (const auto& e : expressions[l]) {
      BigInt predicted = 1;
      bool known = true;
      for (std::size_t g = 0; g < e.size(); ++g) {
        if (e[g] == 0) continue;
        if (!gen_size[g]) {
          known = false;
          break;
        }
        predicted *= boost::multiprecision::pow(*gen_size[g], static_cast<unsigned>(e[g]));
      }
      if (!known) continue;
      ++report.expressions_checked;
      if (predicted != slice.fiber_size(l)) report.violations.push_back({l, e, predicted, slice.fiber_size(l)});
    }
  }
  return report;
}

std::size_t common_descendants(const PGraphSlice& slice, std::size_t alpha, std::size_t beta,
                               const GroupElement& z) {
  auto lz = slice.level_index(z);
  if (!lz) throw LevelNotComparable("level " + to_string(z) + " is not in the slice");
  const auto la = slice.level_of(alpha);
  const auto lb = slice.level_of(beta);
  if (!slice.level_precedes(la, *lz) || !slice.level_precedes(lb, *lz))
    throw LevelNotComparable("level " + to_string(z) + " is not above both vertices");
  std::size_t count = 0;
  for (std::size_t w = slice.fiber_begin(*lz); w < slice.fiber_end(*lz); ++w) {
    if (sorted_contains(slice.ancestors(w, la), alpha) && sorted_contains(slice.ancestors(w, lb), beta)) ++count;
  }
  return count;
}

namespace {

std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_counts(const PGraphSlice& slice, std::size_t la,
                                                                       std::size_t lb, std::size_t lz) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
  for (std::size_t w = slice.fiber_begin(lz); w < slice.fiber_end(lz); ++w) {
    for (auto a : slice.ancestors(w, la))
      for (auto b : slice.ancestors(w, lb)) ++counts[{a, b}];
  }
  return counts;
}

}  // namespace

std::map<std::size_t, std::size_t> common_descendant_histogram(const PGraphSlice& slice, const GroupElement& a,
                                                               const GroupElement& b, const GroupElement& z) {
  auto la = slice.level_index(a);
  auto lb = slice.level_index(b);
  auto lz = slice.level_index(z);
  if (!la || !lb || !lz) throw LevelNotComparable("histogram levels must all be in the slice");
  if (!slice.level_precedes(*la, *lz) || !slice.level_precedes(*lb, *lz))
    throw LevelNotComparable("level " + to_string(z) + " is not above both levels");
  const auto counts = pair_counts(slice, *la, *lb, *lz);
  std::map<std::size_t, std::size_t> histogram;
  for (std::size_t x = slice.fiber_begin(*la); x < slice.fiber_end(*la); ++x) {
    for (std::size_t y = slice.fiber_begin(*lb); y < slice.fiber_end(*lb); ++y) {
      auto it = counts.find({x, y});
      ++histogram[it == counts.end() ? 0 : it->second];
    }
  }
  return histogram;
}

std::string to_string(ProductOfTreesResult::Kind kind) {
  switch (kind) {
    case ProductOfTreesResult::Kind::ProductOfTrees:
      return "ProductOfTrees";
    case ProductOfTreesResult::Kind::NotProduct:
      return "NotProduct";
    case ProductOfTreesResult::Kind::NotFreeSemigroup:
      return "NotFreeSemigroup";
  }
  return "?";
}

ProductOfTreesResult check_product_of_trees(const PGraphSlice& slice) {
  ProductOfTreesResult result{ProductOfTreesResult::Kind::ProductOfTrees, std::nullopt, 0, {}, false};
  const auto& gens = slice.generators();
  lattice::IntMatrix rows;
  for (const auto& g : gens) rows.push_back(g.coords());
  if (lattice::rank(rows, slice.rank()) < gens.size()) {
    result.kind = ProductOfTreesResult::Kind::NotFreeSemigroup;
    return result;
  }
  for (const auto& g : gens) {
    if (auto l = slice.level_index(g)) result.valencies.push_back(slice.fiber_size(*l));
    else if (slice.semigroup()) result.valencies.push_back(static_cast<std::size_t>(scale(slice.semigroup()->spec(), g)));
    else result.valencies.push_back(0);
  }

  for (std::size_t base = 0; base < slice.levels().size(); ++base) {
    for (std::size_t a = 0; a < gens.size(); ++a) {
      for (std::size_t b = a + 1; b < gens.size(); ++b) {
        const auto la = slice.level_step(base, a);
        const auto lb = slice.level_step(base, b);
        if (!la || !lb) continue;
        const auto top = slice.level_step(*la, b);
        if (!top) continue;
        const auto counts = pair_counts(slice, *la, *lb, *top);
        for (std::size_t v = slice.fiber_begin(base); v < slice.fiber_end(base); ++v) {
          for (auto ea : slice.out_edges(v)) {
            if (slice.edges()[ea].gen != a) continue;
            for (auto eb : slice.out_edges(v)) {
              if (slice.edges()[eb].gen != b) continue;
              const auto x = slice.edges()[ea].to;
              const auto y = slice.edges()[eb].to;
              auto it = counts.find({x, y});
              const std::size_t c = it == counts.end() ? 0 : it->second;
              ++result.squares_checked;
              if (c == 1) continue;
              result.kind = ProductOfTreesResult::Kind::NotProduct;
              // A pair with no common descendant is the clearest witness; keep looking for one.
              if (!result.witness || (result.witness->common != 0 && c == 0))
                result.witness = SquareWitness{v, a, b, x, y, c};
            }
          }
        }
      }
    }
  }
  if (result.kind != ProductOfTreesResult::Kind::ProductOfTrees) return result;

  const auto root = slice.root();
  if (root && slice.depth() <= 3) {
    const auto d = complete_depth(slice, *root);
    const auto model = tree_product_slice(gens, result.valencies, d);
    if (cones_isomorphic(slice, *root, model, *model.root(), d)) {
      result.isomorphism_cross_check = true;
    } else {
      result.kind = ProductOfTreesResult::Kind::NotProduct;
    }
  }
  return result;
}

ProductPrediction predict_product_of_trees(const ConeSemigroup& semigroup, const GeneratorSet& generators) {
  const auto& spec = semigroup.spec();
  const auto& sigma = generators.sigma;
  lattice::IntMatrix rows;
  for (const auto& g : sigma) rows.push_back(g.coords());
  if (lattice::rank(rows, spec.rank()) < sigma.size())
    throw NotApplicable("generating set is not a lattice basis; the coprime-scales criterion does not apply");

  ProductPrediction p{true, true, true};
  std::vector<BigInt> product_scales;
  std::vector<std::vector<std::int64_t>> rhos;
  for (const auto& g : sigma) {
    product_scales.push_back(scale(spec, g) * scale(spec, -g));
    rhos.push_back(rho(spec, g));
  }
  for (std::size_t a = 0; a < sigma.size(); ++a) {
    for (std::size_t b = a + 1; b < sigma.size(); ++b) {
      if (gcd(product_scales[a], product_scales[b]) != 1) p.coprime_scales = false;
      for (std::size_t j = 0; j < spec.components(); ++j) {
        if (rhos[a][j] > 0 && rhos[b][j] > 0) p.disjoint_expansions = false;
      }
    }
  }
  p.predicted = p.disjoint_expansions;
  return p;
}

}  // namespace flatgraph
