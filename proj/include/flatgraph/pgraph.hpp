#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatgraph/cone_semigroup.hpp"
#include "flatgraph/coset_model.hpp"
#include "flatgraph/flat_core.hpp"
#include "flatgraph/group_element.hpp"

namespace flatgraph {

/// A generator-labelled edge of the 1-skeleton, directed from the lower level up.
struct Edge {
  std::size_t from;
  std::size_t to;
  std::size_t gen;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Depth-truncated 1-skeleton of a P-graph: levels, their fibers and generator edges.
///
/// Vertices are kept sorted by (level, residues) and edges by (from, gen, to). All
/// checks read only this structure, so slices rebuilt from exported files or formed as
/// products are checked the same way as slices built from a coset model. At construction
/// the ancestor sets anc(w, l) -- every vertex at level l from which w is reachable -- are
/// computed once over all paths; strong simplicity is the statement that each is a
/// singleton.
class PGraphSlice {
 public:
  PGraphSlice(std::vector<GroupElement> generators, std::size_t depth, std::vector<Vertex> vertices,
              std::vector<Edge> edges, std::optional<ConeSemigroup> semigroup = std::nullopt);

  const std::vector<GroupElement>& generators() const { return generators_; }
  std::size_t depth() const { return depth_; }
  const std::vector<GroupElement>& levels() const { return levels_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::optional<ConeSemigroup>& semigroup() const { return semigroup_; }
  std::size_t rank() const { return rank_; }

  std::optional<std::size_t> level_index(const GroupElement& x) const;
  std::optional<std::size_t> vertex_index(const Vertex& v) const;
  std::size_t level_of(std::size_t vertex) const { return vertex_level_[vertex]; }
  /// Vertices of level l are [fiber_begin(l), fiber_end(l)).
  std::size_t fiber_begin(std::size_t level) const { return level_offset_[level]; }
  std::size_t fiber_end(std::size_t level) const { return level_offset_[level + 1]; }
  std::size_t fiber_size(std::size_t level) const { return fiber_end(level) - fiber_begin(level); }

  const std::vector<std::size_t>& out_edges(std::size_t vertex) const { return out_[vertex]; }
  const std::vector<std::size_t>& in_edges(std::size_t vertex) const { return in_[vertex]; }

  /// Level reached from level l along generator g, if it is in the slice.
  std::optional<std::size_t> level_step(std::size_t level, std::size_t gen) const;
  /// Reachability in the level DAG (reflexive).
  bool level_precedes(std::size_t lower, std::size_t upper) const { return level_le_[lower][upper]; }
  /// Levels in an order where every generator step moves forward.
  const std::vector<std::size_t>& level_order() const { return level_order_; }
  bool acyclic() const { return acyclic_; }

  /// Vertices at `level` that reach `vertex` along some directed path.
  const std::vector<std::size_t>& ancestors(std::size_t vertex, std::size_t level) const {
    return ancestors_[vertex][level];
  }

  std::optional<std::size_t> root() const;

 private:
  void index();

  std::vector<GroupElement> generators_;
  std::size_t depth_;
  std::size_t rank_ = 0;
  std::vector<GroupElement> levels_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::optional<ConeSemigroup> semigroup_;

  std::map<GroupElement, std::size_t> level_lookup_;
  std::vector<std::size_t> level_offset_;
  std::vector<std::size_t> vertex_level_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::optional<std::size_t>>> step_;
  std::vector<std::vector<bool>> level_le_;
  std::vector<std::size_t> level_order_;
  bool acyclic_ = true;
  std::vector<std::vector<std::vector<std::size_t>>> ancestors_;
};

/// A morphism source -> target of the path category, with its degree.
struct MorphismWitness {
  std::size_t source;
  std::size_t target;
  GroupElement degree;
};

std::optional<MorphismWitness> morphism(const PGraphSlice& slice, std::size_t source, std::size_t target);

/// Levels: sums of at most D generators, closed downward; edges: truncation along each generator.
PGraphSlice build_slice(const ConeSemigroup& semigroup, const GeneratorSet& generators, const CosetModel& model,
                        std::size_t depth);

struct StrongSimplicityReport {
  struct Violation {
    std::size_t target;
    std::size_t level;
    std::vector<std::size_t> ancestors;  // more than one
  };
  std::optional<std::size_t> root;
  bool acyclic = true;
  std::vector<std::size_t> bad_degree_edges;
  std::vector<std::size_t> unreachable;
  std::vector<std::size_t> extra_sources;  // vertices besides the root with no incoming edge
  std::vector<std::size_t> parallel_edges;  // edges repeating an earlier edge's endpoints
  std::vector<Violation> violations;
  std::size_t pairs_checked = 0;

  bool rooted() const { return root.has_value() && unreachable.empty() && extra_sources.empty(); }
  bool strongly_simple() const { return violations.empty() && parallel_edges.empty(); }
  bool passed() const { return acyclic && bad_degree_edges.empty() && rooted() && strongly_simple(); }
};

StrongSimplicityReport check_rooted_strongly_simple(const PGraphSlice& slice);

/// Out-degree scale(sigma) per generator and in-degree one per available generator.
struct LocalDegreeReport {
  struct Violation {
    std::size_t vertex;
    std::size_t gen;
    bool incoming;
    std::size_t expected;
    std::size_t actual;
  };
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
};

LocalDegreeReport check_local_degrees(const PGraphSlice& slice);

struct FactorizationReport {
  struct Violation {
    std::size_t source;
    std::size_t target;
    std::size_t middle_level;
    std::size_t intermediates;
  };
  std::size_t morphisms_checked = 0;
  std::size_t splits_checked = 0;
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
};

FactorizationReport check_factorization(const PGraphSlice& slice);

/// Number of intermediate vertices u with source -> u -> target at `middle_level`.
std::size_t count_factorizations(const PGraphSlice& slice, std::size_t source, std::size_t target,
                                 std::size_t middle_level);

struct FiberRegularityReport {
  struct Violation {
    std::size_t level;
    std::vector<std::int64_t> multiplicities;
    BigInt predicted;
    std::size_t actual;
  };
  std::size_t expressions_checked = 0;
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
};

/// All generator multisets expressing each level along paths inside the slice.
std::vector<std::vector<std::vector<std::int64_t>>> level_expressions(const PGraphSlice& slice);

FiberRegularityReport check_fiber_regularity(const PGraphSlice& slice);

struct RegularityReport {
  std::size_t depth = 0;
  std::size_t cones_compared = 0;
  std::string reference_form;
  std::vector<std::size_t> mismatched;  // vertices whose cone differs from the root's
  bool passed() const { return mismatched.empty(); }
};

RegularityReport check_regularity(const PGraphSlice& slice, std::size_t depth);

/// Largest d <= slice depth such that every sum of at most d generators above the
/// vertex's level is a slice level.
std::size_t complete_depth(const PGraphSlice& slice, std::size_t vertex);

/// Isomorphism-invariant hash of the descendant cone of `vertex` cut at `depth` edges,
/// with vertices labelled by relative degree and edges by generator vector.
std::string canonical_form(const PGraphSlice& slice, std::size_t vertex, std::size_t depth);

/// Exact degree-preserving isomorphism test between two truncated descendant cones.
bool cones_isomorphic(const PGraphSlice& a, std::size_t va, const PGraphSlice& b, std::size_t vb,
                      std::size_t depth);

std::size_t common_descendants(const PGraphSlice& slice, std::size_t alpha, std::size_t beta,
                               const GroupElement& z);

/// Histogram: number of common descendants at z -> number of (alpha, beta) pairs with that count,
/// over all alpha at level a and beta at level b.
std::map<std::size_t, std::size_t> common_descendant_histogram(const PGraphSlice& slice, const GroupElement& a,
                                                               const GroupElement& b, const GroupElement& z);

struct SquareWitness {
  std::size_t vertex;
  std::size_t gen_a;
  std::size_t gen_b;
  std::size_t child_a;
  std::size_t child_b;
  std::size_t common;
};

struct ProductOfTreesResult {
  enum class Kind { ProductOfTrees, NotProduct, NotFreeSemigroup };
  Kind kind;
  std::optional<SquareWitness> witness;
  std::size_t squares_checked = 0;
  /// Children per vertex along each generator (fiber size at the generator's level).
  std::vector<std::size_t> valencies;
  /// Set when an explicit isomorphism to the tree product was also established.
  bool isomorphism_cross_check = false;
};

std::string to_string(ProductOfTreesResult::Kind kind);

ProductOfTreesResult check_product_of_trees(const PGraphSlice& slice);

struct ProductPrediction {
  /// The values s(sigma)s(-sigma) are pairwise coprime.
  bool coprime_scales;
  /// No component is expanded by two distinct generators.
  bool disjoint_expansions;
  bool predicted;
};

ProductPrediction predict_product_of_trees(const ConeSemigroup& semigroup, const GeneratorSet& generators);

/// Explicit product of rooted trees, one factor per generator with the given valency.
PGraphSlice tree_product_slice(const std::vector<GroupElement>& generators, const std::vector<std::size_t>& valencies,
                               std::size_t depth);

PGraphSlice external_product(const std::vector<PGraphSlice>& slices);

struct VirtualProductReport {
  std::vector<GroupElement> generators;
  std::size_t levels = 0;
  std::size_t vertices = 0;
  ProductOfTreesResult product;
  bool passed() const { return product.kind == ProductOfTreesResult::Kind::ProductOfTrees; }
};

/// Restricts the slice to the levels with <functional, x> = 0 mod modulus.
PGraphSlice restrict_to_sublattice(const PGraphSlice& slice, const std::vector<std::int64_t>& functional,
                                   std::int64_t modulus);

VirtualProductReport virtually_product_subsemigroup(const PGraphSlice& slice,
                                                    const std::vector<std::int64_t>& functional,
                                                    std::int64_t modulus);

}  // namespace flatgraph
