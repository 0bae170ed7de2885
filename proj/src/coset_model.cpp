#include "flatgraph/coset_model.hpp"

#include <stdexcept>

#include "flatgraph/errors.hpp"

namespace flatgraph {

PadicModel::PadicModel(std::vector<PadicRow> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw InvalidSpec("p-adic model needs at least one row");
  for (const auto& r : rows_) {
    if (!is_prime(r.prime)) throw NonPrimeModulus(r.prime);
    if (r.exponents.size() != rows_.front().exponents.size())
      throw InvalidSpec("p-adic exponent rows must share one length");
  }
}

TreeModel::TreeModel(std::vector<std::int64_t> valencies) : valencies_(std::move(valencies)) {
  if (valencies_.empty()) throw InvalidSpec("tree model needs at least one factor");
}

FlatGroupSpec derive_flat_spec(const CosetModel& model) {
  if (const auto* padic = std::get_if<PadicModel>(&model)) {
    std::vector<std::vector<std::int64_t>> weights;
    std::vector<std::int64_t> scales;
    for (const auto& r : padic->rows()) {
      if (!is_prime(r.prime)) throw NonPrimeModulus(r.prime);
      weights.push_back(r.exponents);
      scales.push_back(r.prime);
    }
    return FlatGroupSpec(padic->rows().front().exponents.size(), std::move(weights), std::move(scales));
  }
  const auto& tree = std::get<TreeModel>(model);
  const std::size_t n = tree.valencies().size();
  std::vector<std::vector<std::int64_t>> weights(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j) weights[j][j] = 1;
  return FlatGroupSpec(n, std::move(weights), tree.valencies());
}

namespace {

std::uint64_t small_pow(std::int64_t base, std::int64_t exponent) {
  std::uint64_t r = 1;
  for (std::int64_t i = 0; i < exponent; ++i) {
    if (r > kMaxFiberSize / static_cast<std::uint64_t>(base))
      throw FiberTooLarge("residue modulus exceeds the enumerable fiber limit");
    r *= static_cast<std::uint64_t>(base);
  }
  return r;
}

std::vector<std::int64_t> expansion(const FlatGroupSpec& spec, const GroupElement& x) {
  auto r = rho(spec, x);
  for (auto& v : r) v = std::max<std::int64_t>(v, 0);
  return r;
}

}  // namespace

std::vector<std::uint64_t> fiber_caps(const FlatGroupSpec& spec, const GroupElement& x) {
  const auto m = expansion(spec, x);
  std::vector<std::uint64_t> caps(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) caps[j] = small_pow(spec.relative_scale(j), m[j]);
  return caps;
}

std::vector<Vertex> fiber(const CosetModel& model, const ConeSemigroup& semigroup, const GroupElement& x) {
  if (!semigroup.contains(x)) throw NotInSemigroup("level " + to_string(x) + " is not in the semigroup");
  const auto caps = fiber_caps(derive_flat_spec(model), x);
  std::uint64_t total = 1;
  for (auto c : caps) {
    if (total > kMaxFiberSize / c) throw FiberTooLarge("fiber at " + to_string(x) + " is too large to enumerate");
    total *= c;
  }
  std::vector<Vertex> out;
  out.reserve(total);
  std::vector<std::uint64_t> r(caps.size(), 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    out.push_back(Vertex{x, r});
    for (std::size_t j = caps.size(); j > 0; --j) {
      if (++r[j - 1] < caps[j - 1]) break;
      r[j - 1] = 0;
    }
  }
  return out;
}

std::uint64_t fiber_index(const std::vector<std::uint64_t>& caps, const std::vector<std::uint64_t>& residues) {
  std::uint64_t index = 0;
  for (std::size_t j = 0; j < caps.size(); ++j) index = index * caps[j] + residues[j];
  return index;
}

Vertex truncate(const CosetModel& model, const GroupElement& x, const GroupElement& y, const Vertex& v) {
  return truncate(model, derive_flat_spec(model), x, y, v);
}

Vertex truncate(const CosetModel& model, const FlatGroupSpec& spec, const GroupElement& x, const GroupElement& y,
                const Vertex& v) {
  if (v.level != y) throw std::invalid_argument("vertex is not at level " + to_string(y));
  if (v.residues.size() != spec.components()) throw DimensionMismatch(spec.components(), v.residues.size());
  const auto mx = expansion(spec, x);
  const auto my = expansion(spec, y);
  for (std::size_t j = 0; j < mx.size(); ++j) {
    if (mx[j] > my[j])
      throw LevelNotComparable("level " + to_string(x) + " does not lie below " + to_string(y));
  }
  Vertex out{x, v.residues};
  const bool tree = std::holds_alternative<TreeModel>(model);
  for (std::size_t j = 0; j < mx.size(); ++j) {
    const auto s = spec.relative_scale(j);
    if (tree) {
      // Word prefix: drop the trailing (m_j(y) - m_j(x)) base-d digits.
      out.residues[j] = v.residues[j] / small_pow(s, my[j] - mx[j]);
    } else {
      // Multiplying b p^{-m(y)} by p^{m(y)-m(x)} keeps the numerator mod p^{m(x)}.
      out.residues[j] = v.residues[j] % small_pow(s, mx[j]);
    }
  }
  return out;
}

}  // namespace flatgraph
