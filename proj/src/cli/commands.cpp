#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "flatgraph/cli.hpp"

namespace flatgraph::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Json element_list(const std::vector<GroupElement>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.coords());
  return out;
}

std::string element_text(const std::vector<GroupElement>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : " ") + to_string(x);
  return s.empty() ? "-" : s;
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& js) {
  std::vector<std::size_t> out;
  for (auto j : js) out.push_back(j + 1);
  return out;
}

SignPattern pattern_or_default(const std::string& text, const FlatGroupSpec& spec) {
  if (text.empty()) {
    std::vector<std::size_t> all(spec.components());
    for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
    return SignPattern::full(all, spec.components());
  }
  try {
    return SignPattern::parse(text, spec.components());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("--pattern: ") + e.what());
  }
}

std::string scale_text(const std::vector<ScaleFactor>& forms) {
  if (forms.empty()) return "1";
  std::string s;
  for (const auto& f : forms) s += (s.empty() ? "" : "*") + std::to_string(f.base) + "^(" + format_linear_form(f.exponent) + ")";
  return s;
}

struct Built {
  ModelConfig config;
  FlatGroupSpec spec;
  ConeSemigroup semigroup;
  GeneratorSet generators;
  PGraphSlice slice;
};

Built build_from_config(const std::string& path, const std::string& pattern_text, std::optional<std::size_t> depth) {
  auto config = load_config(path);
  auto spec = derive_flat_spec(config.model);
  auto pattern = pattern_or_default(pattern_text, spec);
  if (!pattern.is_full(spec.components())) throw ConfigError("--pattern must give a sign to every component");
  const auto adm = is_admissible(spec, pattern, config.bound.value_or(default_search_bound(spec)));
  if (!adm.admissible()) throw ConfigError("pattern " + to_string(pattern) + " is not admissible");
  ConeSemigroup semigroup(spec, pattern);
  auto generators = minimal_generators(semigroup, config.norm_bound.value_or(kDefaultNormBound));
  auto slice = build_slice(semigroup, generators, config.model, depth.value_or(config.depth.value_or(3)));
  return Built{std::move(config), std::move(spec), std::move(semigroup), std::move(generators), std::move(slice)};
}

void emit(const PGraphSlice& slice, const std::string& format, const std::string& out_path, std::ostream& out,
          RunReport& report) {
  std::string text;
  if (format == "json") text = to_json(slice).dump(1) + "\n";
  else if (format == "dot") text = to_dot(slice);
  else throw ConfigError("--format must be dot or json");
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw ConfigError(out_path + ": cannot write file");
  file << text;
  report.artifacts.push_back(out_path);
}

Json vertex_json(const PGraphSlice& slice, std::size_t v) { return vertex_name(slice.vertices()[v]); }

template <typename F>
void timed(RunReport& report, const std::string& name, F&& f) {
  const auto t0 = Clock::now();
  f();
  report.timings.emplace_back(name, seconds_since(t0));
}

void rooted_checks(const PGraphSlice& slice, RunReport& report) {
  const auto r = check_rooted_strongly_simple(slice);
  {
    CheckResult c{"rooted", r.acyclic && r.bad_degree_edges.empty() && r.rooted(), "", nullptr};
    std::ostringstream s;
    if (c.passed) {
      s << "root " << vertex_name(slice.vertices()[*r.root]) << " reaches all " << slice.vertices().size() << " vertices";
    } else {
      Json w;
      if (!r.acyclic) w["cycle"] = true;
      if (!r.root) w["root"] = "missing";
      if (!r.bad_degree_edges.empty()) {
        const auto& e = slice.edges()[r.bad_degree_edges.front()];
        w["bad_degree_edge"] = {{"from", vertex_json(slice, e.from)}, {"to", vertex_json(slice, e.to)}, {"gen", e.gen}};
      }
      if (!r.unreachable.empty()) w["unreachable"] = vertex_json(slice, r.unreachable.front());
      if (!r.extra_sources.empty()) w["extra_source"] = vertex_json(slice, r.extra_sources.front());
      s << r.unreachable.size() << " unreachable, " << r.extra_sources.size() << " extra sources, "
        << r.bad_degree_edges.size() << " mis-degreed edges";
      c.detail = std::move(w);
    }
    c.summary = s.str();
    report.checks.push_back(std::move(c));
  }
  CheckResult c{"strongly_simple", r.strongly_simple(), std::to_string(r.pairs_checked) + " (vertex, level) pairs", nullptr};
  if (!r.violations.empty()) {
    const auto& v = r.violations.front();
    Json anc = Json::array();
    for (auto a : v.ancestors) anc.push_back(vertex_json(slice, a));
    c.detail = {{"target", vertex_json(slice, v.target)}, {"level", slice.levels()[v.level].coords()}, {"ancestors", anc}};
    c.summary += ", " + std::to_string(r.violations.size()) + " with several ancestors";
  } else if (!c.passed) {
    const auto& e = slice.edges()[r.parallel_edges.front()];
    c.detail = {{"parallel_edge", {{"from", vertex_json(slice, e.from)}, {"to", vertex_json(slice, e.to)}, {"gen", e.gen}}}};
    c.summary += ", " + std::to_string(r.parallel_edges.size()) + " parallel edges";
  }
  report.checks.push_back(std::move(c));
}

void degree_check(const PGraphSlice& slice, RunReport& report) {
  const auto r = check_local_degrees(slice);
  CheckResult c{"degrees", r.passed(), r.passed() ? "out-degree scale(sigma), in-degree 1" : "", nullptr};
  if (!r.passed()) {
    const auto& v = r.violations.front();
    c.summary = std::to_string(r.violations.size()) + " degree violations";
    c.detail = {{"vertex", vertex_json(slice, v.vertex)}, {"gen", v.gen}, {"direction", v.incoming ? "in" : "out"},
                {"expected", v.expected}, {"actual", v.actual}};
  }
  report.checks.push_back(std::move(c));
}

void factorization_check(const PGraphSlice& slice, RunReport& report) {
  const auto r = check_factorization(slice);
  CheckResult c{"factorization", r.passed(),
                std::to_string(r.morphisms_checked) + " morphisms, " + std::to_string(r.splits_checked) + " splittings",
                nullptr};
  if (!r.passed()) {
    const auto& v = r.violations.front();
    c.summary += ", " + std::to_string(r.violations.size()) + " without a unique factorization";
    c.detail = {{"source", vertex_json(slice, v.source)}, {"target", vertex_json(slice, v.target)},
                {"middle_level", slice.levels()[v.middle_level].coords()}, {"intermediates", v.intermediates}};
  }
  report.checks.push_back(std::move(c));
}

void fiber_check(const PGraphSlice& slice, RunReport& report) {
  const auto r = check_fiber_regularity(slice);
  CheckResult c{"fibers", r.passed(), std::to_string(r.expressions_checked) + " level expressions", nullptr};
  if (!r.passed()) {
    const auto& v = r.violations.front();
    c.summary += ", " + std::to_string(r.violations.size()) + " mismatches";
    c.detail = {{"level", slice.levels()[v.level].coords()}, {"multiplicities", v.multiplicities},
                {"predicted", v.predicted.str()}, {"actual", v.actual}};
  }
  report.checks.push_back(std::move(c));
}

void regularity_check(const PGraphSlice& slice, std::optional<std::size_t> depth, RunReport& report) {
  const auto root = slice.root();
  if (!root) {
    report.checks.push_back({"regularity", false, "no root", Json{{"root", "missing"}}});
    return;
  }
  const auto d = depth.value_or(std::min<std::size_t>(2, complete_depth(slice, *root)));
  const auto r = check_regularity(slice, d);
  CheckResult c{"regularity", r.passed(),
                "regular to depth " + std::to_string(d) + " over " + std::to_string(r.cones_compared) + " cones", nullptr};
  if (!r.passed()) {
    c.summary = "depth " + std::to_string(d) + ": " + std::to_string(r.mismatched.size()) + " cones differ from the root's";
    c.detail = {{"vertex", vertex_json(slice, r.mismatched.front())},
                {"vertex_form", canonical_form(slice, r.mismatched.front(), d)},
                {"root_form", r.reference_form}};
  }
  report.checks.push_back(std::move(c));
}

Json product_detail(const PGraphSlice& slice, const ProductOfTreesResult& r) {
  Json d{{"kind", to_string(r.kind)}, {"squares_checked", r.squares_checked}, {"valencies", r.valencies}};
  if (r.witness) {
    const auto& w = *r.witness;
    d["witness"] = {{"vertex", vertex_json(slice, w.vertex)}, {"gens", {w.gen_a, w.gen_b}},
                    {"children", {vertex_json(slice, w.child_a), vertex_json(slice, w.child_b)}},
                    {"common_descendants", w.common}};
  }
  if (r.isomorphism_cross_check) d["isomorphic_to_tree_product"] = true;
  return d;
}

void product_check(const PGraphSlice& slice, bool informational, RunReport& report) {
  const auto r = check_product_of_trees(slice);
  CheckResult c{"product_of_trees", r.kind == ProductOfTreesResult::Kind::ProductOfTrees, to_string(r.kind),
                product_detail(slice, r), informational};
  if (slice.semigroup() && r.kind != ProductOfTreesResult::Kind::NotFreeSemigroup) {
    GeneratorSet gens;
    gens.sigma = slice.generators();
    const auto p = predict_product_of_trees(*slice.semigroup(), gens);
    c.detail["predicted"] = p.predicted;
    c.detail["coprime_scales"] = p.coprime_scales;
    c.summary += p.predicted == c.passed ? " (as predicted)" : " (prediction disagrees)";
  }
  report.checks.push_back(std::move(c));
}

void tree_check(const PGraphSlice& slice, RunReport& report) {
  CheckResult c{"tree", true, "", nullptr};
  const auto root = slice.root();
  if (slice.generators().size() != 1 || !root) {
    c.passed = false;
    c.summary = "needs one generator and a root";
    c.detail = {{"generators", slice.generators().size()}, {"root", root.has_value()}};
    report.checks.push_back(std::move(c));
    return;
  }
  Json counts = Json::array();
  for (std::size_t l : slice.level_order()) counts.push_back(slice.fiber_size(l));
  const auto d = slice.level_step(slice.level_of(*root), 0) ? slice.fiber_size(*slice.level_step(slice.level_of(*root), 0)) : 0;
  for (std::size_t v = 0; v < slice.vertices().size() && c.passed; ++v) {
    const auto in = slice.in_edges(v).size();
    const auto out = slice.out_edges(v).size();
    const bool top = !slice.level_step(slice.level_of(v), 0);
    if ((v == *root ? in != 0 : in != 1) || (!top && out != d)) {
      c.passed = false;
      c.detail = {{"vertex", vertex_json(slice, v)}, {"in_degree", in}, {"out_degree", out}, {"valency", d}};
    }
  }
  std::ostringstream s;
  s << (c.passed ? "rooted " : "not a rooted ") << d << "-ary tree, level sizes " << counts.dump();
  c.summary = s.str();
  if (c.passed) c.detail = {{"valency", d}, {"level_sizes", counts}};
  report.checks.push_back(std::move(c));
}

void virtual_check(const PGraphSlice& slice, const std::optional<Congruence>& congruence, RunReport& report) {
  if (!congruence) throw ConfigError("the virtual check needs --congruence");
  const auto r = virtually_product_subsemigroup(slice, congruence->functional, congruence->modulus);
  const auto sub = restrict_to_sublattice(slice, congruence->functional, congruence->modulus);
  CheckResult c{"virtual_product", r.passed(),
                "sublattice generators " + element_text(r.generators) + ": " + to_string(r.product.kind), nullptr};
  c.detail = product_detail(sub, r.product);
  c.detail["generators"] = element_list(r.generators);
  c.detail["levels"] = r.levels;
  c.detail["vertices"] = r.vertices;
  report.checks.push_back(std::move(c));
}

std::vector<std::string> expand_which(const std::vector<std::string>& which) {
  static const std::vector<std::string> known{"rooted",  "degrees", "factorization", "fibers", "regularity",
                                              "product", "tree",    "virtual",       "all"};
  std::vector<std::string> out;
  for (const auto& w : which) {
    if (std::find(known.begin(), known.end(), w) == known.end()) throw ConfigError("unknown check \"" + w + "\"");
    out.push_back(w);
  }
  return out;
}

}  // namespace

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed || c.informational; });
}

Json RunReport::to_json() const {
  Json doc;
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json j{{"name", c.name}, {"passed", c.passed}, {"summary", c.summary}};
    if (c.informational) j["informational"] = true;
    if (!c.detail.is_null()) j[c.passed ? "detail" : "witness"] = c.detail;
    cs.push_back(std::move(j));
  }
  doc["passed"] = passed();
  doc["checks"] = std::move(cs);
  doc["artifacts"] = artifacts;
  return doc;
}

void print_report(std::ostream& out, const RunReport& report, bool timings) {
  for (const auto& c : report.checks) {
    out << (c.informational ? "INFO " : c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.summary << '\n';
    if (!c.passed && !c.informational && !c.detail.is_null()) out << "  witness: " << c.detail.dump() << '\n';
  }
  for (const auto& a : report.artifacts) out << "wrote " << a << '\n';
  if (timings) {
    for (const auto& [name, secs] : report.timings)
      out << "time " << name << ": " << std::fixed << std::setprecision(3) << secs << "s\n";
  }
}

RunReport cmd_validate(const std::string& path) {
  const auto config = load_config(path);
  const auto spec = derive_flat_spec(config.model);
  RunReport report;
  std::ostringstream s;
  s << (std::holds_alternative<PadicModel>(config.model) ? "padic" : "tree") << " model, rank " << spec.rank() << ", "
    << spec.components() << " components";
  report.checks.push_back({"config", true, s.str(), nullptr});
  return report;
}

RunReport cmd_semigroups(const std::string& path, std::optional<std::int64_t> bound, std::ostream& out) {
  const auto config = load_config(path);
  const auto spec = derive_flat_spec(config.model);
  const auto search = bound.value_or(config.bound.value_or(default_search_bound(spec)));
  const auto norm_bound = config.norm_bound.value_or(kDefaultNormBound);
  RunReport report;

  const auto t0 = Clock::now();
  const auto patterns = enumerate_admissible(spec, search);
  out << std::left << std::setw(12) << "J+" << std::setw(12) << "J-" << std::setw(32) << "Sigma" << std::setw(10)
      << "+/0/-" << "scale\n";
  for (const auto& pattern : patterns) {
    CheckResult c{"pattern " + to_string(pattern), true, "", nullptr};
    try {
      const auto gens = minimal_generators(ConeSemigroup(spec, pattern), norm_bound);
      const auto forms = scale_exponent_forms(spec, pattern.j_plus);
      std::ostringstream counts;
      counts << gens.sigma_plus.size() << '/' << gens.sigma_zero.size() << '/' << gens.sigma_minus.size();
      out << std::setw(12) << to_string_set(pattern.j_plus) << std::setw(12) << to_string_set(pattern.j_minus)
          << std::setw(32) << element_text(gens.sigma) << std::setw(10) << counts.str() << scale_text(forms) << '\n';
      Json scale = Json::array();
      for (const auto& f : forms) scale.push_back({{"base", f.base}, {"exponent", format_linear_form(f.exponent)}});
      c.summary = element_text(gens.sigma);
      c.detail = {{"j_plus", one_based(pattern.j_plus)}, {"j_minus", one_based(pattern.j_minus)},
                  {"sigma", element_list(gens.sigma)},     {"sigma_plus", element_list(gens.sigma_plus)},
                  {"sigma_zero", element_list(gens.sigma_zero)}, {"sigma_minus", element_list(gens.sigma_minus)},
                  {"scale", scale},                        {"certified_norm", gens.certified_norm}};
    } catch (const CertificationFailed& e) {
      out << std::setw(12) << to_string_set(pattern.j_plus) << "certification failed; try --bound "
          << 2 * e.bound() + 1 << '\n';
      c.passed = false;
      c.summary = e.what();
      c.detail = {{"error", "CertificationFailed"}, {"bound", e.bound()}, {"suggested_bound", 2 * e.bound() + 1}};
    }
    report.checks.push_back(std::move(c));
  }

  // Full patterns that were not found, with the exact reason when one exists.
  const std::size_t q = spec.components();
  for (std::uint64_t mask = 0; mask < (1ULL << q); ++mask) {
    std::vector<std::size_t> plus;
    for (std::size_t j = 0; j < q; ++j)
      if (mask >> j & 1) plus.push_back(j);
    const auto pattern = SignPattern::full(plus, q);
    if (std::find(patterns.begin(), patterns.end(), pattern) != patterns.end()) continue;
    const auto r = is_admissible(spec, pattern, search);
    CheckResult c{"infeasible " + to_string(pattern), true, "NotFoundWithinBound(" + std::to_string(search) + ")",
                  Json{{"j_plus", one_based(pattern.j_plus)}, {"status", "NotFoundWithinBound"}, {"bound", search}}};
    if (r.certificate) {
      Json terms = Json::array();
      for (std::size_t i = 0; i < r.certificate->components.size(); ++i) {
        const auto j = r.certificate->components[i];
        terms.push_back({{"component", j + 1}, {"sign", pattern.sign(j)}, {"coefficient", r.certificate->coefficients[i]}});
      }
      c.detail["certificate"] = std::move(terms);
      c.summary += ", no strict element exists";
    }
    out << "not admissible: J+=" << to_string_set(pattern.j_plus) << " (" << c.summary << ")\n";
    report.checks.push_back(std::move(c));
  }
  report.timings.emplace_back("semigroups", seconds_since(t0));
  return report;
}

RunReport cmd_graph_build(const std::string& path, const BuildOptions& options, std::ostream& out) {
  RunReport report;
  const auto t0 = Clock::now();
  const auto built = build_from_config(path, options.pattern, options.depth);
  report.timings.emplace_back("build", seconds_since(t0));
  emit(built.slice, options.format, options.out_path, out, report);
  return report;
}

Congruence parse_congruence(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("--congruence expects c1,...,ck:m");
  Congruence c{parse_element(text.substr(0, colon)).coords(), 0};
  try {
    std::size_t used = 0;
    c.modulus = std::stoll(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("trailing text");
  } catch (const std::exception&) {
    throw ConfigError("--congruence: bad modulus in \"" + text + "\"");
  }
  if (c.modulus < 1) throw ConfigError("--congruence: modulus must be positive");
  return c;
}

RunReport check_slice(const PGraphSlice& slice, const CheckOptions& options) {
  RunReport report;
  const auto which = expand_which(options.which);
  const bool all = std::find(which.begin(), which.end(), "all") != which.end();
  auto wants = [&](const std::string& name) { return all || std::find(which.begin(), which.end(), name) != which.end(); };
  if (wants("rooted")) timed(report, "rooted", [&] { rooted_checks(slice, report); });
  if (wants("degrees")) timed(report, "degrees", [&] { degree_check(slice, report); });
  if (wants("factorization")) timed(report, "factorization", [&] { factorization_check(slice, report); });
  if (wants("fibers")) timed(report, "fibers", [&] { fiber_check(slice, report); });
  if (wants("regularity")) timed(report, "regularity", [&] { regularity_check(slice, options.regularity_depth, report); });
  const bool product_requested = std::find(which.begin(), which.end(), "product") != which.end();
  if (wants("product")) timed(report, "product", [&] { product_check(slice, !product_requested, report); });
  if (std::find(which.begin(), which.end(), "tree") != which.end()) timed(report, "tree", [&] { tree_check(slice, report); });
  if (std::find(which.begin(), which.end(), "virtual") != which.end() || (all && options.congruence))
    timed(report, "virtual", [&] { virtual_check(slice, options.congruence, report); });
  return report;
}

RunReport cmd_graph_check(const std::string& path, const CheckOptions& options) {
  const auto t0 = Clock::now();
  const auto built = build_from_config(path, options.pattern, options.depth);
  const auto build_time = seconds_since(t0);
  auto report = check_slice(built.slice, options);
  report.timings.insert(report.timings.begin(), {"build", build_time});
  return report;
}

RunReport cmd_qlo(const std::string& path, const std::string& pattern_text, const GroupElement& a, const GroupElement& b,
                  std::optional<std::int64_t> bound, std::ostream& out) {
  const auto config = load_config(path);
  const auto spec = derive_flat_spec(config.model);
  const ConeSemigroup semigroup(spec, pattern_or_default(pattern_text, spec));
  spec.require_rank(a);
  spec.require_rank(b);
  const auto radius = bound.value_or(config.bound.value_or(std::max<std::int64_t>(8, 2 * (a.inf_norm() + b.inf_norm()))));
  RunReport report;
  const auto t0 = Clock::now();
  const auto bounds = minimal_common_upper_bounds(semigroup, a, b, radius);
  report.timings.emplace_back("qlo", seconds_since(t0));
  out << "minimal common upper bounds of " << to_string(a) << " and " << to_string(b) << ": " << element_text(bounds)
      << '\n';
  CheckResult c{"least_upper_bound", bounds.size() == 1,
                std::to_string(bounds.size()) + " minimal upper bounds within radius " + std::to_string(radius),
                Json{{"a", a.coords()}, {"b", b.coords()}, {"minimal_upper_bounds", element_list(bounds)}}};
  report.checks.push_back(std::move(c));
  return report;
}

RunReport cmd_product(const std::vector<std::string>& paths, const std::string& format, const std::string& out_path,
                      std::ostream& out) {
  if (paths.size() < 2) throw ConfigError("product needs at least two slice files");
  std::vector<PGraphSlice> slices;
  for (const auto& p : paths) slices.push_back(load_slice(p));
  RunReport report;
  const auto t0 = Clock::now();
  const auto product = external_product(slices);
  report.timings.emplace_back("product", seconds_since(t0));
  emit(product, format, out_path, out, report);
  rooted_checks(product, report);
  return report;
}

GroupElement parse_element(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (ch != '(' && ch != ')' && ch != ' ') s += ch;
  }
  std::vector<std::int64_t> coords;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      coords.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw ConfigError("cannot read group element \"" + text + "\"");
    }
  }
  if (coords.empty()) throw ConfigError("cannot read group element \"" + text + "\"");
  return GroupElement(std::move(coords));
}

}  // namespace flatgraph::cli
