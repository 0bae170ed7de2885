#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "flatgraph/cone_semigroup.hpp"
#include "flatgraph/flat_core.hpp"
#include "flatgraph/group_element.hpp"

namespace flatgraph {

/// One Q_p coordinate of G = Q_{p_1} x ... x Q_{p_q} ⋊ Z^k: x in Z^k multiplies it by
/// p^{-<exponents, x>}.
struct PadicRow {
  std::int64_t prime;
  std::vector<std::int64_t> exponents;
};

class PadicModel {
 public:
  explicit PadicModel(std::vector<PadicRow> rows);
  const std::vector<PadicRow>& rows() const { return rows_; }

 private:
  std::vector<PadicRow> rows_;
};

/// Cartesian product of rooted regular trees; factor j has d_j children per vertex.
class TreeModel {
 public:
  explicit TreeModel(std::vector<std::int64_t> valencies);
  const std::vector<std::int64_t>& valencies() const { return valencies_; }

 private:
  std::vector<std::int64_t> valencies_;
};

using CosetModel = std::variant<PadicModel, TreeModel>;

/// A right U-coset nu x U: a level x in P and one canonical numerator per component,
/// residue_j in [0, s_j^{max(rho_j(x),0)}).
struct Vertex {
  GroupElement level;
  std::vector<std::uint64_t> residues;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

inline constexpr std::uint64_t kMaxFiberSize = 1u << 22;

FlatGroupSpec derive_flat_spec(const CosetModel& model);

/// Per-component residue moduli s_j^{max(rho_j(x),0)} at level x.
std::vector<std::uint64_t> fiber_caps(const FlatGroupSpec& spec, const GroupElement& x);

/// All vertices at level x in lexicographic residue order; |fiber| = s(x).
std::vector<Vertex> fiber(const CosetModel& model, const ConeSemigroup& semigroup, const GroupElement& x);

/// Position of a residue tuple inside the lexicographically ordered fiber.
std::uint64_t fiber_index(const std::vector<std::uint64_t>& caps, const std::vector<std::uint64_t>& residues);

/// trun_{x,y}: the ancestor at level x of a vertex at level y.
Vertex truncate(const CosetModel& model, const GroupElement& x, const GroupElement& y, const Vertex& v);
/// Same, with the model's flat spec already derived.
Vertex truncate(const CosetModel& model, const FlatGroupSpec& spec, const GroupElement& x, const GroupElement& y,
                const Vertex& v);

}  // namespace flatgraph
