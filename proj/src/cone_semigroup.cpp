#include "flatgraph/cone_semigroup.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "flatgraph/errors.hpp"
#include "flatgraph/lattice.hpp"

namespace flatgraph {

int SignPattern::sign(std::size_t j) const {
  if (std::find(j_plus.begin(), j_plus.end(), j) != j_plus.end()) return 1;
  if (std::find(j_minus.begin(), j_minus.end(), j) != j_minus.end()) return -1;
  return 0;
}

bool SignPattern::is_full(std::size_t components) const {
  return j_plus.size() + j_minus.size() == components;
}

SignPattern SignPattern::parse(const std::string& text, std::size_t components) {
  SignPattern p;
  std::vector<bool> seen(components, false);
  std::size_t i = 0;
  while (i < text.size()) {
    const char s = text[i];
    if (s != '+' && s != '-') throw std::invalid_argument("pattern '" + text + "': expected '+' or '-'");
    ++i;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw std::invalid_argument("pattern '" + text + "': missing component index");
    const auto index = std::stoul(text.substr(start, i - start));
    if (index < 1 || index > components)
      throw std::invalid_argument("pattern '" + text + "': component " + std::to_string(index) + " out of range");
    if (seen[index - 1])
      throw std::invalid_argument("pattern '" + text + "': component " + std::to_string(index) + " repeated");
    seen[index - 1] = true;
    (s == '+' ? p.j_plus : p.j_minus).push_back(index - 1);
  }
  std::sort(p.j_plus.begin(), p.j_plus.end());
  std::sort(p.j_minus.begin(), p.j_minus.end());
  return p;
}

SignPattern SignPattern::full(std::vector<std::size_t> plus, std::size_t components) {
  SignPattern p;
  std::sort(plus.begin(), plus.end());
  p.j_plus = std::move(plus);
  for (std::size_t j = 0; j < components; ++j) {
    if (!std::binary_search(p.j_plus.begin(), p.j_plus.end(), j)) p.j_minus.push_back(j);
  }
  return p;
}

std::string to_string(const SignPattern& pattern) {
  std::vector<std::pair<std::size_t, char>> items;
  for (auto j : pattern.j_plus) items.emplace_back(j, '+');
  for (auto j : pattern.j_minus) items.emplace_back(j, '-');
  std::sort(items.begin(), items.end());
  std::string out;
  for (auto [j, s] : items) out += s + std::to_string(j + 1);
  return out;
}

std::string to_string_set(const std::vector<std::size_t>& indices) {
  std::string out = "{";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(indices[i] + 1);
  }
  return out + "}";
}

ConeSemigroup::ConeSemigroup(FlatGroupSpec spec, SignPattern pattern)
    : spec_(std::move(spec)), pattern_(std::move(pattern)) {
  const auto q = spec_.components();
  for (auto j : pattern_.j_plus) {
    if (j >= q) throw std::invalid_argument("pattern component out of range");
  }
  for (auto j : pattern_.j_minus) {
    if (j >= q) throw std::invalid_argument("pattern component out of range");
    if (pattern_.sign(j) == 1) throw std::invalid_argument("J+ and J- must be disjoint");
  }
}

bool ConeSemigroup::contains(const GroupElement& x) const {
  const auto r = rho(spec_, x);
  for (auto j : pattern_.j_plus) {
    if (r[j] < 0) return false;
  }
  for (auto j : pattern_.j_minus) {
    if (r[j] > 0) return false;
  }
  return true;
}

std::int64_t ConeSemigroup::layer_norm(const GroupElement& x) const {
  const auto r = rho(spec_, x);
  std::int64_t n = 0;
  for (auto j : pattern_.j_plus) n = checked_add(n, r[j]);
  for (auto j : pattern_.j_minus) n = checked_add(n, -r[j]);
  return n;
}

std::int64_t default_search_bound(const FlatGroupSpec& spec) { return 8 * static_cast<std::int64_t>(spec.rank()); }

namespace {

bool strictly_signed(const FlatGroupSpec& spec, const SignPattern& pattern, const GroupElement& x) {
  const auto r = rho(spec, x);
  for (std::size_t j = 0; j < r.size(); ++j) {
    const int s = pattern.sign(j);
    if ((s > 0 && r[j] <= 0) || (s < 0 && r[j] >= 0)) return false;
  }
  return true;
}

// Circuits of the signed weight rows with a positive dependency certify (Gordan) that
// no x has strict signs everywhere.
std::optional<SignCircuit> find_sign_circuit(const FlatGroupSpec& spec, const SignPattern& pattern) {
  const std::size_t q = spec.components();
  const std::size_t k = spec.rank();
  const std::size_t max_size = std::min(q, k + 1);
  std::vector<std::size_t> subset;
  std::optional<SignCircuit> found;
  // Subsets of each size in lexicographic order.
  for (std::size_t size = 2; size <= max_size && !found; ++size) {
    subset.resize(size);
    std::iota(subset.begin(), subset.end(), 0);
    while (!found) {
      lattice::IntMatrix columns(k, std::vector<std::int64_t>(size));
      for (std::size_t c = 0; c < size; ++c) {
        const int s = pattern.sign(subset[c]);
        for (std::size_t i = 0; i < k; ++i) columns[i][c] = s * spec.weight_row(subset[c])[i];
      }
      const auto kernel = lattice::integer_kernel(columns, size);
      if (kernel.size() == 1) {
        const auto& v = kernel.front();
        const bool positive = std::all_of(v.begin(), v.end(), [](std::int64_t c) { return c > 0; });
        if (positive) found = SignCircuit{subset, v};
      }
      // Next combination.
      std::size_t i = size;
      while (i > 0 && subset[i - 1] == q - size + i - 1) --i;
      if (i == 0) break;
      ++subset[i - 1];
      for (std::size_t t = i; t < size; ++t) subset[t] = subset[t - 1] + 1;
    }
  }
  return found;
}

bool lex_pattern_less(const SignPattern& a, const SignPattern& b) { return a.j_plus < b.j_plus; }

}  // namespace

AdmissibilityResult is_admissible(const FlatGroupSpec& spec, const SignPattern& pattern,
                                  std::int64_t search_bound) {
  ConeSemigroup validated(spec, pattern);
  if (!pattern.is_full(spec.components()))
    throw std::invalid_argument("admissibility is defined for full sign patterns");
  AdmissibilityResult result{AdmissibilityResult::Status::NotFoundWithinBound, search_bound, std::nullopt,
                             std::nullopt};
  if (auto circuit = find_sign_circuit(spec, pattern)) {
    result.certificate = std::move(circuit);
    return result;
  }
  for (std::int64_t r = 0; r <= search_bound; ++r) {
    std::optional<GroupElement> best;
    for_each_in_box(spec.rank(), r, [&](const GroupElement& x) {
      if (x.inf_norm() != r || !strictly_signed(spec, pattern, x)) return;
      if (!best || x.l1_norm() < best->l1_norm() || (x.l1_norm() == best->l1_norm() && x < *best)) best = x;
    });
    if (best) {
      result.status = AdmissibilityResult::Status::Admissible;
      result.witness = std::move(best);
      return result;
    }
  }
  return result;
}

std::vector<SignPattern> enumerate_admissible(const FlatGroupSpec& spec, std::int64_t search_bound) {
  const std::size_t q = spec.components();
  std::vector<SignPattern> out;
  for (std::uint32_t mask = 0; mask < (1u << q); ++mask) {
    std::vector<std::size_t> plus;
    for (std::size_t j = 0; j < q; ++j) {
      if (mask & (1u << j)) plus.push_back(j);
    }
    auto pattern = SignPattern::full(std::move(plus), q);
    if (is_admissible(spec, pattern, search_bound).admissible()) out.push_back(std::move(pattern));
  }
  std::sort(out.begin(), out.end(), lex_pattern_less);
  return out;
}

namespace {

// Memoized Sigma-decomposition over a pointed cone; layer norm strictly drops at each step.
class Decomposer {
 public:
  Decomposer(const ConeSemigroup& semigroup, const std::vector<GroupElement>& generators)
      : semigroup_(semigroup), generators_(generators) {}

  std::optional<std::vector<std::int64_t>> operator()(const GroupElement& x) {
    if (x.is_zero()) return std::vector<std::int64_t>(generators_.size(), 0);
    if (auto it = memo_.find(x); it != memo_.end()) return it->second;
    std::optional<std::vector<std::int64_t>> result;
    for (std::size_t g = 0; g < generators_.size() && !result; ++g) {
      const GroupElement rest = x - generators_[g];
      if (!semigroup_.contains(rest) || semigroup_.layer_norm(rest) >= semigroup_.layer_norm(x)) continue;
      if (auto sub = (*this)(rest)) {
        ++(*sub)[g];
        result = std::move(sub);
      }
    }
    memo_.emplace(x, result);
    return result;
  }

 private:
  const ConeSemigroup& semigroup_;
  const std::vector<GroupElement>& generators_;
  std::map<GroupElement, std::optional<std::vector<std::int64_t>>> memo_;
};

// Cone points with 0 < layer norm <= max_norm, sorted by (norm, lex).
std::vector<GroupElement> cone_points_up_to(const ConeSemigroup& semigroup, std::int64_t max_norm) {
  const auto& spec = semigroup.spec();
  // Coordinates are bounded through an invertible k x k block B of the weights:
  // x = B^{-1} rho_B(x), so |x_i| <= max|B^{-1}| * |rho(x)|_1.
  lattice::IntMatrix block;
  for (const auto& row : spec.weights()) {
    block.push_back(row);
    if (lattice::rank(block, spec.rank()) < block.size()) block.pop_back();
    if (block.size() == spec.rank()) break;
  }
  const auto inv = lattice::inverse(block);
  Rational worst = 0;
  for (const auto& row : inv)
    for (const auto& v : row) worst = std::max(worst, Rational(abs(v)));
  const Rational reach = worst * max_norm;
  const BigInt radius_big = (numerator(reach) + denominator(reach) - 1) / denominator(reach);
  const std::int64_t radius = to_int64(radius_big);

  std::vector<std::pair<std::int64_t, GroupElement>> points;
  for_each_in_box(spec.rank(), radius, [&](const GroupElement& x) {
    if (x.is_zero() || !semigroup.contains(x)) return;
    const auto n = semigroup.layer_norm(x);
    if (n <= max_norm) points.emplace_back(n, x);
  });
  std::sort(points.begin(), points.end());
  std::vector<GroupElement> out;
  out.reserve(points.size());
  for (auto& [n, x] : points) out.push_back(std::move(x));
  return out;
}

}  // namespace

GeneratorSet minimal_generators(const ConeSemigroup& semigroup, std::int64_t norm_bound) {
  const auto& spec = semigroup.spec();
  if (!semigroup.pattern().is_full(spec.components()))
    throw NotApplicable("minimal generators need a full sign pattern");
  if (!uniscalar_kernel(spec).empty()) throw KernelNotTrivial();
  if (norm_bound < 1) throw std::invalid_argument("norm bound must be positive");

  GeneratorSet out;
  for (const auto& x : cone_points_up_to(semigroup, norm_bound)) {
    const bool reducible = std::any_of(out.sigma.begin(), out.sigma.end(),
                                       [&](const GroupElement& g) { return semigroup.contains(x - g); });
    if (!reducible) out.sigma.push_back(x);
  }

  std::int64_t max_norm = 0;
  for (const auto& g : out.sigma) max_norm = std::max(max_norm, semigroup.layer_norm(g));
  const std::int64_t region = out.sigma.empty() ? 2 * norm_bound : 2 * max_norm;
  std::sort(out.sigma.begin(), out.sigma.end());
  Decomposer decompose_point(semigroup, out.sigma);
  for (const auto& x : cone_points_up_to(semigroup, region)) {
    if (!decompose_point(x)) throw CertificationFailed(norm_bound);
  }
  // The region above is empty when every generator lies beyond the bound; the indicator
  // element catches that case.
  const auto indicator = is_admissible(spec, semigroup.pattern(), default_search_bound(spec));
  if (indicator.witness && !decompose_point(*indicator.witness)) throw CertificationFailed(norm_bound);
  out.certified_norm = region;

  for (const auto& g : out.sigma) {
    const auto r = rho(spec, g);
    const bool nonneg = std::all_of(r.begin(), r.end(), [](std::int64_t v) { return v >= 0; });
    const bool nonpos = std::all_of(r.begin(), r.end(), [](std::int64_t v) { return v <= 0; });
    (nonneg ? out.sigma_plus : nonpos ? out.sigma_minus : out.sigma_zero).push_back(g);
  }
  return out;
}

std::optional<std::vector<std::int64_t>> decompose(const ConeSemigroup& semigroup,
                                                   const std::vector<GroupElement>& generators,
                                                   const GroupElement& x) {
  if (!semigroup.contains(x)) return std::nullopt;
  Decomposer d(semigroup, generators);
  return d(x);
}

std::optional<std::int64_t> shift_into_cone(const ConeSemigroup& semigroup, const GroupElement& indicator,
                                            const GroupElement& y) {
  const auto ry = rho(semigroup.spec(), y);
  const auto rx = rho(semigroup.spec(), indicator);
  std::int64_t n = 0;
  auto need = [&](std::int64_t value, std::int64_t step) -> bool {
    // smallest n with value + n*step >= 0, step > 0
    if (value >= 0) return true;
    if (step <= 0) return false;
    n = std::max(n, (-value + step - 1) / step);
    return true;
  };
  for (auto j : semigroup.pattern().j_plus) {
    if (!need(ry[j], rx[j])) return std::nullopt;
  }
  for (auto j : semigroup.pattern().j_minus) {
    if (!need(-ry[j], -rx[j])) return std::nullopt;
  }
  if (!semigroup.contains(y + n * indicator)) return std::nullopt;
  return n;
}

MaximalityReport check_maximality(const ConeSemigroup& semigroup, std::int64_t sample_bound) {
  const auto& spec = semigroup.spec();
  const auto adm = is_admissible(spec, semigroup.pattern(), default_search_bound(spec));
  if (!adm.admissible()) throw NotApplicable("pattern " + to_string(semigroup.pattern()) + " is not admissible");
  MaximalityReport report{*adm.witness, 0, 0, {}, {}};
  for_each_in_box(spec.rank(), sample_bound, [&](const GroupElement& y) {
    ++report.samples;
    if (auto n = shift_into_cone(semigroup, report.indicator, y)) {
      report.max_shift = std::max(report.max_shift, *n);
    } else {
      report.uncovered.push_back(y);
    }
    if (semigroup.contains(y) && semigroup.contains(-y)) {
      const auto r = rho(spec, y);
      if (std::any_of(r.begin(), r.end(), [](std::int64_t v) { return v != 0; }))
        report.non_uniscalar_units.push_back(y);
    }
  });
  return report;
}

bool extension_closure(const ConeSemigroup& semigroup, const GroupElement& z) { return semigroup.contains(z); }

std::vector<GroupElement> minimal_common_upper_bounds(const ConeSemigroup& semigroup, const GroupElement& a,
                                                      const GroupElement& b, std::int64_t bound) {
  semigroup.spec().require_rank(a);
  semigroup.spec().require_rank(b);
  std::vector<GroupElement> candidates;
  for_each_in_box(semigroup.spec().rank(), bound, [&](const GroupElement& u) {
    if (semigroup.contains(u - a) && semigroup.contains(u - b)) candidates.push_back(u);
  });
  std::vector<GroupElement> minimal;
  for (const auto& u : candidates) {
    const bool dominated = std::any_of(candidates.begin(), candidates.end(), [&](const GroupElement& v) {
      return v != u && semigroup.contains(u - v);
    });
    if (!dominated) minimal.push_back(u);
  }
  return minimal;
}

}  // namespace flatgraph
