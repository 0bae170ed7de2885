#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatgraph/flat_core.hpp"
#include "flatgraph/group_element.hpp"

namespace flatgraph {

/// Expanding (J+) and contracting (J-) component sets. Indices are 0-based internally
/// and 1-based in the textual form "+1+2-3".
struct SignPattern {
  std::vector<std::size_t> j_plus;
  std::vector<std::size_t> j_minus;

  /// +1, -1 or 0 (unconstrained) for component j.
  int sign(std::size_t j) const;
  bool is_full(std::size_t components) const;

  /// Parses "+1+2-3". Throws std::invalid_argument on overlap or malformed input.
  static SignPattern parse(const std::string& text, std::size_t components);
  /// The full pattern whose J+ is `plus` and whose J- is everything else.
  static SignPattern full(std::vector<std::size_t> plus, std::size_t components);

  friend bool operator==(const SignPattern&, const SignPattern&) = default;
};

std::string to_string(const SignPattern& pattern);
/// "{1,2}" style display of a 0-based index set.
std::string to_string_set(const std::vector<std::size_t>& indices);

/// P = {x : rho_j(x) >= 0 on J+, rho_j(x) <= 0 on J-}.
class ConeSemigroup {
 public:
  ConeSemigroup(FlatGroupSpec spec, SignPattern pattern);

  const FlatGroupSpec& spec() const { return spec_; }
  const SignPattern& pattern() const { return pattern_; }

  bool contains(const GroupElement& x) const;
  /// x <= y in the semigroup order, i.e. y - x in P.
  bool precedes(const GroupElement& x, const GroupElement& y) const { return contains(y - x); }
  /// sum_j |rho_j(x)| over constrained components; additive on P.
  std::int64_t layer_norm(const GroupElement& x) const;

 private:
  FlatGroupSpec spec_;
  SignPattern pattern_;
};

/// A positive dependency sum_i c_i * sign_i * rho_{j_i} = 0 that rules out strict signs.
struct SignCircuit {
  std::vector<std::size_t> components;
  std::vector<std::int64_t> coefficients;
};

struct AdmissibilityResult {
  enum class Status { Admissible, NotFoundWithinBound };
  Status status;
  std::int64_t bound;
  /// Indicator element: strict sign on every component.
  std::optional<GroupElement> witness;
  /// Present when no strict element exists at all.
  std::optional<SignCircuit> certificate;

  bool admissible() const { return status == Status::Admissible; }
};

std::int64_t default_search_bound(const FlatGroupSpec& spec);

AdmissibilityResult is_admissible(const FlatGroupSpec& spec, const SignPattern& pattern,
                                  std::int64_t search_bound);

/// All admissible full patterns, ordered lexicographically by J+.
std::vector<SignPattern> enumerate_admissible(const FlatGroupSpec& spec, std::int64_t search_bound);

/// Unique minimal generating set of a pointed cone, split by sign behaviour.
struct GeneratorSet {
  std::vector<GroupElement> sigma;
  std::vector<GroupElement> sigma_plus;
  std::vector<GroupElement> sigma_zero;
  std::vector<GroupElement> sigma_minus;
  /// Layer norm up to which every cone point was checked to be a sum of sigma.
  std::int64_t certified_norm = 0;
};

inline constexpr std::int64_t kDefaultNormBound = 16;

GeneratorSet minimal_generators(const ConeSemigroup& semigroup, std::int64_t norm_bound = kDefaultNormBound);

/// Nonnegative coefficients expressing x over `generators`, if x is in the semigroup they span.
std::optional<std::vector<std::int64_t>> decompose(const ConeSemigroup& semigroup,
                                                   const std::vector<GroupElement>& generators,
                                                   const GroupElement& x);

struct MaximalityReport {
  GroupElement indicator;
  std::size_t samples = 0;
  std::int64_t max_shift = 0;
  /// Sampled y with no n >= 0 such that y + n*indicator is in P.
  std::vector<GroupElement> uncovered;
  /// Sampled x with x and -x in P but rho(x) != 0.
  std::vector<GroupElement> non_uniscalar_units;

  bool passed() const { return uncovered.empty() && non_uniscalar_units.empty(); }
};

/// Smallest n >= 0 with y + n*indicator in P, if one exists.
std::optional<std::int64_t> shift_into_cone(const ConeSemigroup& semigroup, const GroupElement& indicator,
                                            const GroupElement& y);

MaximalityReport check_maximality(const ConeSemigroup& semigroup, std::int64_t sample_bound);

bool extension_closure(const ConeSemigroup& semigroup, const GroupElement& z);

/// Minimal elements of {u : u - a in P, u - b in P} with |u|_inf <= bound.
std::vector<GroupElement> minimal_common_upper_bounds(const ConeSemigroup& semigroup, const GroupElement& a,
                                                      const GroupElement& b, std::int64_t bound);

}  // namespace flatgraph
