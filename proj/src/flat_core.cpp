#include "flatgraph/flat_core.hpp"

#include <map>
#include <sstream>

#include "flatgraph/errors.hpp"
#include "flatgraph/lattice.hpp"

namespace flatgraph {

FlatGroupSpec::FlatGroupSpec(std::size_t rank, std::vector<std::vector<std::int64_t>> weights,
                             std::vector<std::int64_t> relative_scales)
    : rank_(rank), weights_(std::move(weights)), scales_(std::move(relative_scales)) {
  if (rank_ == 0 || rank_ > kMaxRank) throw InvalidSpec("rank must be in [1, 16]");
  if (weights_.empty() || weights_.size() > kMaxComponents)
    throw InvalidSpec("number of components must be in [1, 16]");
  if (scales_.size() != weights_.size())
    throw InvalidSpec("one relative scale is required per component");
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (weights_[j].size() != rank_)
      throw InvalidSpec("weight row " + std::to_string(j + 1) + " has wrong length");
    bool nonzero = false;
    for (auto w : weights_[j]) nonzero = nonzero || w != 0;
    if (!nonzero) throw InvalidSpec("weight row " + std::to_string(j + 1) + " is zero");
    if (scales_[j] < 2) throw InvalidSpec("relative scale " + std::to_string(j + 1) + " is below 2");
  }
}

void FlatGroupSpec::require_rank(const GroupElement& x) const {
  if (x.rank() != rank_) throw DimensionMismatch(rank_, x.rank());
}

std::vector<std::int64_t> rho(const FlatGroupSpec& spec, const GroupElement& x) {
  spec.require_rank(x);
  std::vector<std::int64_t> out(spec.components(), 0);
  for (std::size_t j = 0; j < spec.components(); ++j) {
    const auto& row = spec.weight_row(j);
    for (std::size_t i = 0; i < spec.rank(); ++i) out[j] = checked_add(out[j], checked_mul(row[i], x[i]));
  }
  return out;
}

BigInt scale(const FlatGroupSpec& spec, const GroupElement& x) {
  const auto r = rho(spec, x);
  BigInt s = 1;
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (r[j] > 0) s *= big_pow(spec.relative_scale(j), r[j]);
  }
  return s;
}

Rational module_delta(const FlatGroupSpec& spec, const GroupElement& x) {
  return Rational(scale(spec, x), scale(spec, -x));
}

Submultiplicativity submultiplicativity_class(const FlatGroupSpec& spec, const GroupElement& x,
                                              const GroupElement& y) {
  const auto rx = rho(spec, x);
  const auto ry = rho(spec, y);
  for (std::size_t j = 0; j < rx.size(); ++j) {
    if ((rx[j] > 0 && ry[j] < 0) || (rx[j] < 0 && ry[j] > 0)) return Submultiplicativity::Strict;
  }
  return Submultiplicativity::Equal;
}

std::vector<GroupElement> uniscalar_kernel(const FlatGroupSpec& spec) {
  std::vector<GroupElement> basis;
  for (auto& v : lattice::integer_kernel(spec.weights(), spec.rank())) basis.emplace_back(std::move(v));
  return basis;
}

std::vector<ScaleFactor> scale_exponent_forms(const FlatGroupSpec& spec,
                                              const std::vector<std::size_t>& expanding) {
  std::map<std::int64_t, std::vector<std::int64_t>> by_base;
  for (auto j : expanding) {
    auto& form = by_base.try_emplace(spec.relative_scale(j), spec.rank(), 0).first->second;
    for (std::size_t i = 0; i < spec.rank(); ++i) form[i] = checked_add(form[i], spec.weight_row(j)[i]);
  }
  std::vector<ScaleFactor> out;
  for (auto& [base, form] : by_base) out.push_back({base, form});
  return out;
}

std::string format_linear_form(const std::vector<std::int64_t>& coeffs) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto c = coeffs[i];
    if (c == 0) continue;
    if (c < 0) os << '-';
    else if (!first) os << '+';
    const auto mag = c < 0 ? -c : c;
    if (mag != 1) os << mag;
    os << 'n' << (i + 1);
    first = false;
  }
  if (first) return "0";
  return os.str();
}

}  // namespace flatgraph
