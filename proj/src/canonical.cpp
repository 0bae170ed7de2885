// Descendant cones, Weisfeiler-Leman hashing and an exact isomorphism test.
#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "flatgraph/pgraph.hpp"

namespace flatgraph {

namespace {

struct Cone {
  std::vector<GroupElement> label;  // level relative to the apex
  std::vector<std::vector<std::pair<GroupElement, std::size_t>>> out;
  std::vector<std::vector<std::pair<GroupElement, std::size_t>>> in;
  std::size_t edge_count = 0;
};

Cone extract_cone(const PGraphSlice& slice, std::size_t apex, std::size_t depth) {
  std::map<std::size_t, std::size_t> local;
  std::vector<std::size_t> members;
  std::vector<std::size_t> dist;
  std::deque<std::size_t> queue{apex};
  local.emplace(apex, 0);
  members.push_back(apex);
  dist.push_back(0);
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    const auto dv = dist[local.at(v)];
    if (dv == depth) continue;
    for (auto e : slice.out_edges(v)) {
      const auto w = slice.edges()[e].to;
      if (local.emplace(w, members.size()).second) {
        members.push_back(w);
        dist.push_back(dv + 1);
        queue.push_back(w);
      }
    }
  }
  Cone cone;
  const auto& apex_level = slice.levels()[slice.level_of(apex)];
  cone.out.resize(members.size());
  cone.in.resize(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    cone.label.push_back(slice.levels()[slice.level_of(members[i])] - apex_level);
    for (auto e : slice.out_edges(members[i])) {
      const auto& edge = slice.edges()[e];
      auto it = local.find(edge.to);
      if (it == local.end()) continue;
      const auto& g = slice.generators()[edge.gen];
      cone.out[i].emplace_back(g, it->second);
      cone.in[it->second].emplace_back(g, i);
      ++cone.edge_count;
    }
  }
  return cone;
}

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Colour refinement run on two graphs at once with a shared signature dictionary, so
// colour ids mean the same thing on both sides.
class PairRefiner {
 public:
  PairRefiner(const Cone& a, const Cone& b) : a_(a), b_(b) {}

  bool isomorphic() {
    if (a_.label.size() != b_.label.size() || a_.edge_count != b_.edge_count) return false;
    std::map<GroupElement, std::size_t> initial;
    for (const auto& l : a_.label) initial.emplace(l, 0);
    for (const auto& l : b_.label) initial.emplace(l, 0);
    std::size_t next = 0;
    for (auto& [l, id] : initial) id = next++;
    for (const auto& [g, unused] : collect_generators()) gen_id_.emplace(g, gen_id_.size());
    std::vector<std::size_t> ca, cb;
    for (const auto& l : a_.label) ca.push_back(initial.at(l));
    for (const auto& l : b_.label) cb.push_back(initial.at(l));
    return search(std::move(ca), std::move(cb));
  }

 private:
  std::map<GroupElement, int> collect_generators() const {
    std::map<GroupElement, int> gens;
    for (const auto* c : {&a_, &b_})
      for (const auto& adj : c->out)
        for (const auto& [g, w] : adj) gens.emplace(g, 0);
    return gens;
  }

  std::vector<std::size_t> signature(const Cone& c, const std::vector<std::size_t>& col, std::size_t v) const {
    std::vector<std::pair<std::size_t, std::size_t>> outs, ins;
    for (const auto& [g, w] : c.out[v]) outs.emplace_back(gen_id_.at(g), col[w]);
    for (const auto& [g, u] : c.in[v]) ins.emplace_back(gen_id_.at(g), col[u]);
    std::sort(outs.begin(), outs.end());
    std::sort(ins.begin(), ins.end());
    std::vector<std::size_t> sig{col[v], outs.size()};
    for (const auto& [g, x] : outs) sig.insert(sig.end(), {g, x});
    for (const auto& [g, x] : ins) sig.insert(sig.end(), {g, x});
    return sig;
  }

  static std::size_t distinct(const std::vector<std::size_t>& ca) {
    std::vector<std::size_t> s(ca);
    std::sort(s.begin(), s.end());
    return static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
  }

  // Refines to a stable colouring; false if the colour histograms diverge.
  bool refine(std::vector<std::size_t>& ca, std::vector<std::size_t>& cb) const {
    std::size_t classes = distinct(ca);
    for (;;) {
      std::map<std::vector<std::size_t>, std::size_t> dict;
      std::vector<std::vector<std::size_t>> sa, sb;
      for (std::size_t v = 0; v < ca.size(); ++v) sa.push_back(signature(a_, ca, v));
      for (std::size_t v = 0; v < cb.size(); ++v) sb.push_back(signature(b_, cb, v));
      for (const auto& s : sa) dict.emplace(s, 0);
      for (const auto& s : sb) dict.emplace(s, 0);
      std::size_t next = 0;
      for (auto& [s, id] : dict) id = next++;
      std::vector<std::size_t> hist_a(next, 0), hist_b(next, 0);
      for (std::size_t v = 0; v < ca.size(); ++v) ++hist_a[ca[v] = dict.at(sa[v])];
      for (std::size_t v = 0; v < cb.size(); ++v) ++hist_b[cb[v] = dict.at(sb[v])];
      if (hist_a != hist_b) return false;
      const auto now = distinct(ca);
      if (now == classes) return true;
      classes = now;
    }
  }

  bool verify(const std::vector<std::size_t>& ca, const std::vector<std::size_t>& cb) const {
    std::vector<std::size_t> by_colour(ca.size());
    for (std::size_t v = 0; v < cb.size(); ++v) by_colour[cb[v]] = v;
    std::vector<std::size_t> map(ca.size());
    for (std::size_t v = 0; v < ca.size(); ++v) map[v] = by_colour[ca[v]];
    for (std::size_t v = 0; v < ca.size(); ++v) {
      if (a_.label[v] != b_.label[map[v]]) return false;
      std::vector<std::pair<GroupElement, std::size_t>> image, target(b_.out[map[v]]);
      for (const auto& [g, w] : a_.out[v]) image.emplace_back(g, map[w]);
      std::sort(image.begin(), image.end());
      std::sort(target.begin(), target.end());
      if (image != target) return false;
    }
    return true;
  }

  bool search(std::vector<std::size_t> ca, std::vector<std::size_t> cb) const {
    if (!refine(ca, cb)) return false;
    std::vector<std::size_t> count(ca.size(), 0);
    for (auto c : ca) ++count[c];
    std::size_t split = ca.size();
    for (std::size_t c = 0; c < count.size(); ++c) {
      if (count[c] > 1) {
        split = c;
        break;
      }
    }
    if (split == ca.size()) return verify(ca, cb);
    const auto a = static_cast<std::size_t>(std::find(ca.begin(), ca.end(), split) - ca.begin());
    const std::size_t fresh = ca.size();
    for (std::size_t b = 0; b < cb.size(); ++b) {
      if (cb[b] != split) continue;
      auto na = ca;
      auto nb = cb;
      na[a] = fresh;
      nb[b] = fresh;
      if (search(std::move(na), std::move(nb))) return true;
    }
    return false;
  }

  const Cone& a_;
  const Cone& b_;
  std::map<GroupElement, std::size_t> gen_id_;
};

}  // namespace

std::size_t complete_depth(const PGraphSlice& slice, std::size_t vertex) {
  std::vector<std::size_t> frontier{slice.level_of(vertex)};
  for (std::size_t d = 1; d <= slice.depth(); ++d) {
    std::vector<std::size_t> next;
    for (auto l : frontier) {
      for (std::size_t g = 0; g < slice.generators().size(); ++g) {
        auto m = slice.level_step(l, g);
        if (!m) return d - 1;
        next.push_back(*m);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
  }
  return slice.depth();
}

std::string canonical_form(const PGraphSlice& slice, std::size_t vertex, std::size_t depth) {
  const auto cone = extract_cone(slice, vertex, depth);
  const std::size_t n = cone.label.size();
  std::vector<std::uint64_t> colour(n);
  for (std::size_t v = 0; v < n; ++v) colour[v] = fnv1a(to_string(cone.label[v]));
  const std::size_t rounds = 2 * depth + 2;
  for (std::size_t r = 0; r < rounds; ++r) {
    std::vector<std::uint64_t> next(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::string> outs, ins;
      for (const auto& [g, w] : cone.out[v]) outs.push_back(to_string(g) + ":" + std::to_string(colour[w]));
      for (const auto& [g, u] : cone.in[v]) ins.push_back(to_string(g) + ":" + std::to_string(colour[u]));
      std::sort(outs.begin(), outs.end());
      std::sort(ins.begin(), ins.end());
      std::string s = std::to_string(colour[v]) + "|o";
      for (const auto& x : outs) s += x + ";";
      s += "|i";
      for (const auto& x : ins) s += x + ";";
      next[v] = fnv1a(s);
    }
    colour = std::move(next);
  }
  std::sort(colour.begin(), colour.end());
  std::string all;
  for (auto c : colour) all += std::to_string(c) + ",";
  std::ostringstream out;
  out << n << ':' << cone.edge_count << ':' << std::hex << fnv1a(all);
  return out.str();
}

bool cones_isomorphic(const PGraphSlice& a, std::size_t va, const PGraphSlice& b, std::size_t vb,
                      std::size_t depth) {
  const auto ca = extract_cone(a, va, depth);
  const auto cb = extract_cone(b, vb, depth);
  return PairRefiner(ca, cb).isomorphic();
}

RegularityReport check_regularity(const PGraphSlice& slice, std::size_t depth) {
  const auto root = slice.root();
  if (!root) throw std::invalid_argument("regularity needs a rooted slice");
  if (complete_depth(slice, *root) < depth)
    throw std::invalid_argument("regularity depth " + std::to_string(depth) + " exceeds the slice depth");
  RegularityReport report;
  report.depth = depth;
  report.reference_form = canonical_form(slice, *root, depth);
  for (std::size_t v = 0; v < slice.vertices().size(); ++v) {
    if (complete_depth(slice, v) < depth) continue;
    ++report.cones_compared;
    if (v == *root) continue;
    if (canonical_form(slice, v, depth) != report.reference_form || !cones_isomorphic(slice, *root, slice, v, depth))
      report.mismatched.push_back(v);
  }
  return report;
}

}  // namespace flatgraph
