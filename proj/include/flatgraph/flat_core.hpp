#pragma once

#include <cstdint>
#include <vector>

#include "flatgraph/group_element.hpp"
#include "flatgraph/numeric.hpp"

namespace flatgraph {

inline constexpr std::size_t kMaxRank = 16;
inline constexpr std::size_t kMaxComponents = 16;

/// Numerical data of a flat group H = Z^k acting on a tidy subgroup U = U_1...U_q:
/// one homomorphism rho_j : H -> Z per component (row j of `weights`) and the
/// relative scale s_j of that component.
class FlatGroupSpec {
 public:
  FlatGroupSpec(std::size_t rank, std::vector<std::vector<std::int64_t>> weights,
                std::vector<std::int64_t> relative_scales);

  std::size_t rank() const { return rank_; }
  std::size_t components() const { return weights_.size(); }
  const std::vector<std::vector<std::int64_t>>& weights() const { return weights_; }
  const std::vector<std::int64_t>& weight_row(std::size_t j) const { return weights_[j]; }
  const std::vector<std::int64_t>& relative_scales() const { return scales_; }
  std::int64_t relative_scale(std::size_t j) const { return scales_[j]; }

  void require_rank(const GroupElement& x) const;

  friend bool operator==(const FlatGroupSpec&, const FlatGroupSpec&) = default;

 private:
  std::size_t rank_;
  std::vector<std::vector<std::int64_t>> weights_;
  std::vector<std::int64_t> scales_;
};

/// (rho_1(x), ..., rho_q(x)).
std::vector<std::int64_t> rho(const FlatGroupSpec& spec, const GroupElement& x);

/// s(x) = prod_j s_j^{max(rho_j(x), 0)}.
BigInt scale(const FlatGroupSpec& spec, const GroupElement& x);

/// Delta(x) = s(x) / s(-x), reduced.
Rational module_delta(const FlatGroupSpec& spec, const GroupElement& x);

enum class Submultiplicativity { Equal, Strict };

/// Strict iff some component sees rho_j(x) and rho_j(y) nonzero with opposite signs.
Submultiplicativity submultiplicativity_class(const FlatGroupSpec& spec, const GroupElement& x,
                                              const GroupElement& y);

/// Integer basis of the uniscalar subgroup H(1), the kernel lattice of the weights.
std::vector<GroupElement> uniscalar_kernel(const FlatGroupSpec& spec);

/// One factor base^{sum_i coeffs[i] * n_i} of a scale expressed on the standard generators.
struct ScaleFactor {
  std::int64_t base;
  std::vector<std::int64_t> exponent;  // linear form in n_1..n_k
};

/// The scale on a cone where the components in `expanding` are the only ones that grow:
/// s(x) = prod_{j in expanding} s_j^{rho_j(x)}, with equal bases merged.
std::vector<ScaleFactor> scale_exponent_forms(const FlatGroupSpec& spec,
                                              const std::vector<std::size_t>& expanding);

/// "2n1+2n2", "n1-n2", "0".
std::string format_linear_form(const std::vector<std::int64_t>& coeffs);

}  // namespace flatgraph
