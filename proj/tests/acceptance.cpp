// Acceptance suite: one PASS/FAIL line per criterion. All comparisons are exact.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "flatgraph/cli.hpp"
#include "flatgraph/pgraph.hpp"

using namespace flatgraph;
using namespace flatgraph::cli;

namespace {

constexpr std::int64_t kInfeasibleBound = 20;
constexpr std::size_t kPropertyDepth = 3;
constexpr std::size_t kRegularityDepth = 2;
constexpr int kRandomPairs = 10000;
constexpr std::int64_t kRandomBox = 10;
constexpr std::uint64_t kSeed = 20240611;

const std::vector<std::string> kBundled{"example_5_1.json", "example_5_2.json", "example_5_3.json", "moller_tree.json",
                                        "coprime_2_3.json"};

std::string config(const std::string& name) { return std::string(FLATGRAPH_SOURCE_DIR) + "/configs/" + name; }

struct Outcome {
  bool passed = true;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) note = what;
    passed = passed && ok;
  }
};

// Config for Example 5.2 / 5.3 at another prime, written next to the build.
std::string config_at_prime(const std::string& base, std::int64_t p) {
  auto doc = Json::parse(std::ifstream(config(base)));
  for (auto& row : doc["rows"]) row["prime"] = p;
  const auto path = (std::filesystem::temp_directory_path() / ("acceptance_" + std::to_string(p) + "_" + base)).string();
  std::ofstream(path) << doc.dump();
  return path;
}

using Row = std::tuple<std::vector<std::size_t>, std::set<GroupElement>, std::string>;

std::set<Row> semigroup_rows(const std::string& path) {
  std::ostringstream table;
  const auto report = cmd_semigroups(path, kInfeasibleBound, table);
  std::set<Row> rows;
  for (const auto& c : report.checks) {
    if (c.name.rfind("pattern ", 0) != 0) continue;
    std::set<GroupElement> sigma;
    for (const auto& g : c.detail["sigma"]) sigma.insert(GroupElement(g.get<std::vector<std::int64_t>>()));
    std::string exponent = "0";
    if (!c.detail["scale"].empty()) exponent = c.detail["scale"][0]["exponent"];
    if (c.detail["scale"].size() > 1) exponent = "several bases";
    rows.emplace(c.detail["j_plus"].get<std::vector<std::size_t>>(), std::move(sigma), exponent);
  }
  return rows;
}

const GroupElement e1{1, 0}, e2{0, 1};

Outcome check_table_1() {
  const std::set<Row> expected{
      {{1, 2, 3}, {e1, e2}, "2n1+2n2"},      {{1, 2}, {e1, e1 - e2}, "2n1+n2"},
      {{2, 3}, {-e1 + e2, e2}, "n1+2n2"},    {{1}, {e1 - e2, -e2}, "n1"},
      {{3}, {-e1, -e1 + e2}, "n2"},          {{}, {-e1, -e2}, "0"},
  };
  Outcome o;
  for (std::int64_t p : {2, 3}) {
    const auto rows = semigroup_rows(p == 2 ? config("example_5_2.json") : config_at_prime("example_5_2.json", p));
    o.require(rows.size() == 6, "p=" + std::to_string(p) + ": expected 6 patterns, got " + std::to_string(rows.size()));
    o.require(rows == expected, "p=" + std::to_string(p) + ": rows differ from the table");
  }
  o.note = o.passed ? "6 patterns, generators and exponents exact (p=2, p=3)" : o.note;
  return o;
}

Outcome check_table_2() {
  const std::set<Row> expected{
      {{1, 2}, {e1 - e2, e1, e1 + e2}, "2n1"},
      {{1}, {-e1 + e2, e2, e1 + e2}, "n1+n2"},
      {{2}, {-e1 - e2, -e2, e1 - e2}, "n1-n2"},
      {{}, {-e1 + e2, -e1, -e1 - e2}, "0"},
  };
  Outcome o;
  const auto rows = semigroup_rows(config("example_5_3.json"));
  o.require(rows.size() == 4, "expected 4 patterns, got " + std::to_string(rows.size()));
  o.require(rows == expected, "rows differ from the table");
  if (o.passed) o.note = "4 patterns, each with 3 generators, exponents exact";
  return o;
}

Outcome check_infeasible_patterns() {
  Outcome o;
  const auto spec = derive_flat_spec(load_config(config("example_5_2.json")).model);
  for (const auto* text : {"+1-2+3", "-1+2-3"}) {
    const auto r = is_admissible(spec, SignPattern::parse(text, 3), kInfeasibleBound);
    o.require(r.status == AdmissibilityResult::Status::NotFoundWithinBound && r.bound == kInfeasibleBound,
              std::string(text) + " was found admissible");
  }
  std::ostringstream table;
  const auto report = cmd_semigroups(config("example_5_2.json"), kInfeasibleBound, table);
  std::set<std::string> reported;
  for (const auto& c : report.checks)
    if (c.name.rfind("infeasible ", 0) == 0 && c.detail["status"] == "NotFoundWithinBound") reported.insert(c.name);
  o.require(reported == std::set<std::string>{"infeasible +1-2+3", "infeasible -1+2-3"}, "cmd_semigroups lists other patterns");
  if (o.passed) o.note = "J+={1,3} and J+={2}: NotFoundWithinBound(20)";
  return o;
}

PGraphSlice build(const std::string& path, const std::string& pattern, std::size_t depth) {
  const auto c = load_config(path);
  const auto spec = derive_flat_spec(c.model);
  const ConeSemigroup P(spec, SignPattern::parse(pattern, spec.components()));
  return build_slice(P, minimal_generators(P), c.model, depth);
}

std::size_t fiber_at(const PGraphSlice& s, const GroupElement& x) {
  const auto l = s.level_index(x);
  return l ? s.fiber_size(*l) : 0;
}

Outcome check_fiber_counts() {
  Outcome o;
  const auto a = fiber_at(build(config("example_5_2.json"), "+1+2+3", 2), {1, 1});
  const auto b = fiber_at(build(config("example_5_3.json"), "+1+2", 2), {2, 0});
  const auto c = fiber_at(build(config("moller_tree.json"), "+1", 4), GroupElement{4});
  o.require(a == 16 && b == 16 && c == 81, "got " + std::to_string(a) + "/" + std::to_string(b) + "/" + std::to_string(c));
  if (o.passed) o.note = "16 / 16 / 81";
  return o;
}

Outcome check_common_descendants() {
  Outcome o;
  std::ostringstream note;
  for (std::size_t p : {2u, 3u}) {
    const auto path = p == 2 ? config("example_5_2.json") : config_at_prime("example_5_2.json", static_cast<std::int64_t>(p));
    const auto s = build(path, "+1+2+3", 2);
    const auto h = common_descendant_histogram(s, {1, 0}, {0, 1}, {1, 1});
    const std::size_t p3 = p * p * p, p4 = p3 * p;
    o.require(h == std::map<std::size_t, std::size_t>{{0, p4 - p3}, {p, p3}}, "p=" + std::to_string(p) + ": histogram differs");
    const auto kind = check_product_of_trees(build(path, "+1+2+3", 3)).kind;
    o.require(kind == ProductOfTreesResult::Kind::NotProduct, "p=" + std::to_string(p) + ": " + to_string(kind));
    note << "p=" << p << ": " << h.at(p) << " of " << p4 << " pairs have " << p << " common descendants; ";
  }
  if (o.passed) o.note = note.str() + "NotProduct";
  return o;
}

std::vector<std::string> admissible_patterns(const std::string& path) {
  const auto c = load_config(path);
  const auto spec = derive_flat_spec(c.model);
  std::vector<std::string> out;
  for (const auto& p : enumerate_admissible(spec, c.bound.value_or(default_search_bound(spec)))) out.push_back(to_string(p));
  return out;
}

Outcome check_property_suite() {
  Outcome o;
  std::size_t slices = 0;
  for (const auto& name : kBundled) {
    for (const auto& pattern : admissible_patterns(config(name))) {
      CheckOptions opts;
      opts.pattern = pattern;
      opts.depth = kPropertyDepth;
      opts.regularity_depth = kRegularityDepth;
      opts.which = {"rooted", "factorization", "fibers", "regularity", "product"};
      const auto r = cmd_graph_check(config(name), opts);
      ++slices;
      for (const auto& c : r.checks) {
        if (c.name == "product_of_trees") continue;
        o.require(c.passed, name + " " + pattern + ": " + c.name + " failed");
      }
      if (name == "example_5_1.json" || name == "coprime_2_3.json") {
        const CheckResult* product = nullptr;
        for (const auto& c : r.checks)
          if (c.name == "product_of_trees") product = &c;
        o.require(product && product->passed, name + " " + pattern + ": not ProductOfTrees");
        o.require(product && product->detail.value("predicted", false), name + " " + pattern + ": prediction disagrees");
      }
    }
  }
  if (o.passed) o.note = std::to_string(slices) + " slices at depth 3 pass; 5.1 and (2,3) are predicted and found ProductOfTrees";
  return o;
}

Outcome check_qlo() {
  Outcome o;
  std::ostringstream sink;
  const auto r53 = cmd_qlo(config("example_5_3.json"), "+1+2", e1, e1 - e2, std::nullopt, sink);
  const auto r51 = cmd_qlo(config("example_5_1.json"), "+1+2", e1, e2, std::nullopt, sink);
  auto bounds = [](const RunReport& r) {
    std::set<GroupElement> s;
    for (const auto& g : r.checks.front().detail["minimal_upper_bounds"]) s.insert(GroupElement(g.get<std::vector<std::int64_t>>()));
    return s;
  };
  o.require(bounds(r53) == std::set<GroupElement>{2 * e1, 2 * e1 - e2}, "Example 5.3 bounds differ");
  o.require(bounds(r51) == std::set<GroupElement>{e1 + e2}, "Example 5.1 bounds differ");
  if (o.passed) o.note = "5.3: {2e1, 2e1-e2}; 5.1: {e1+e2}";
  return o;
}

Outcome check_moller_baseline() {
  Outcome o;
  const auto t = build(config("moller_tree.json"), "+1", 4);
  std::vector<std::size_t> counts;
  for (std::int64_t i = 0; i <= 4; ++i) counts.push_back(fiber_at(t, GroupElement{i}));
  o.require(counts == std::vector<std::size_t>{1, 3, 9, 27, 81}, "level counts differ");
  for (std::size_t v = 0; v < t.vertices().size(); ++v) {
    if (v != *t.root()) o.require(t.in_edges(v).size() == 1, "in-degree is not 1 at " + vertex_name(t.vertices()[v]));
  }
  const auto two = build_slice(ConeSemigroup(derive_flat_spec(TreeModel({2})), SignPattern::parse("+1", 1)),
                               GeneratorSet{{GroupElement{1}}, {GroupElement{1}}, {}, {}, 0}, TreeModel({2}), 3);
  const auto three = build(config("moller_tree.json"), "+1", 3);
  const auto prod = external_product({two, three});
  for (std::size_t l = 0; l < prod.levels().size(); ++l) {
    const auto& x = prod.levels()[l];
    std::size_t expected = 1;
    for (std::int64_t i = 0; i < x[0]; ++i) expected *= 2;
    for (std::int64_t j = 0; j < x[1]; ++j) expected *= 3;
    o.require(prod.fiber_size(l) == expected, "product fiber at " + to_string(x));
  }
  o.require(check_rooted_strongly_simple(prod).passed(), "product is not rooted and strongly simple");
  if (o.passed) o.note = "1,3,9,27,81 with in-degree 1; 2x3 tree product fibers 2^i 3^j, rooted, strongly simple";
  return o;
}

BigInt scale_oracle(const FlatGroupSpec& spec, const GroupElement& x) {
  BigInt s = 1;
  for (std::size_t j = 0; j < spec.components(); ++j) {
    std::int64_t e = 0;
    for (std::size_t i = 0; i < spec.rank(); ++i) e += spec.weight_row(j)[i] * x[i];
    for (std::int64_t t = 0; t < e; ++t) s *= spec.relative_scale(j);
  }
  return s;
}

Outcome check_random_invariants() {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<std::int64_t> coord(-kRandomBox, kRandomBox);
  std::size_t violations = 0, strict = 0;
  for (const auto& name : kBundled) {
    const auto spec = derive_flat_spec(load_config(config(name)).model);
    for (int i = 0; i < kRandomPairs; ++i) {
      std::vector<std::int64_t> a(spec.rank()), b(spec.rank());
      for (auto& v : a) v = coord(rng);
      for (auto& v : b) v = coord(rng);
      const GroupElement x(a), y(b);
      const auto sx = scale_oracle(spec, x), sy = scale_oracle(spec, y), sxy = scale_oracle(spec, x + y);
      if (scale(spec, x + y) != sxy || sxy > sx * sy) ++violations;
      const bool is_strict = submultiplicativity_class(spec, x, y) == Submultiplicativity::Strict;
      if (is_strict != (sxy < sx * sy)) ++violations;
      strict += is_strict;
      if (module_delta(spec, x + y) != module_delta(spec, x) * module_delta(spec, y)) ++violations;
      if (module_delta(spec, x) != Rational(sx, scale_oracle(spec, -x))) ++violations;
    }
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  if (o.passed)
    o.note = std::to_string(kRandomPairs) + " pairs x " + std::to_string(kBundled.size()) + " specs, 0 violations (" +
             std::to_string(strict) + " strict)";
  return o;
}

Outcome check_virtual_product() {
  Outcome o;
  CheckOptions opts;
  opts.depth = 4;
  opts.pattern = "+1+2";
  opts.which = {"virtual"};
  opts.congruence = parse_congruence("1,1:2");
  const auto r = cmd_graph_check(config("example_5_3.json"), opts);
  o.require(r.exit_code() == 0, "sublattice slice is " + r.checks.front().detail.value("kind", std::string("?")));
  o.require(r.checks.front().detail["generators"] == Json::parse("[[1,-1],[1,1]]"), "unexpected generators");
  if (o.passed) o.note = "n1+n2 even: generators (1,-1),(1,1), ProductOfTrees";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 table-1", check_table_1},
      {"2 table-2", check_table_2},
      {"3 infeasible-patterns", check_infeasible_patterns},
      {"4 fiber-counts", check_fiber_counts},
      {"5 common-descendants", check_common_descendants},
      {"6 property-suite", check_property_suite},
      {"7 qlo", check_qlo},
      {"8 moller-baseline", check_moller_baseline},
      {"9 random-invariants", check_random_invariants},
      {"10 virtual-product", check_virtual_product},
  };
  int failed = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    failed += !o.passed;
    std::cout << (o.passed ? "PASS " : "FAIL ") << name << ": " << o.note << std::endl;
  }
  const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed in " << secs << "s" << std::endl;
  return failed == 0 ? 0 : 1;
}
