#include "plumbcalc/iso.hpp"

#include <algorithm>
#include <optional>

namespace plumbcalc {

namespace {

struct AdjKey {
  int u, v;
  bool operator<(const AdjKey& o) const { return std::tie(u, v) < std::tie(o.u, o.v); }
};

// Per normalized vertex pair: sorted multiset of (label, edge index).
using AdjMap = std::map<AdjKey, std::vector<std::pair<std::string, int>>>;

AdjMap build_adj(const LabeledGraphView& g) {
  AdjMap m;
  for (size_t e = 0; e < g.edge_ends.size(); ++e) {
    auto [u, v] = g.edge_ends[e];
    m[AdjKey{u, v}].emplace_back(g.elabel[e], static_cast<int>(e));
  }
  for (auto& [k, vec] : m) std::sort(vec.begin(), vec.end());
  return m;
}

// Refined vertex invariant: label plus sorted incident edge labels.
std::vector<std::string> invariants(const LabeledGraphView& g) {
  std::vector<std::vector<std::string>> inc(g.n);
  for (size_t e = 0; e < g.edge_ends.size(); ++e) {
    auto [u, v] = g.edge_ends[e];
    inc[u].push_back(g.elabel[e]);
    if (v != u) inc[v].push_back(g.elabel[e]);
  }
  std::vector<std::string> out(g.n);
  for (int v = 0; v < g.n; ++v) {
    std::sort(inc[v].begin(), inc[v].end());
    out[v] = g.vlabel[v] + "|";
    for (auto& s : inc[v]) out[v] += s + ";";
  }
  return out;
}

struct Search {
  const LabeledGraphView& a;
  const LabeledGraphView& b;
  AdjMap adj_a, adj_b;
  std::vector<std::string> inv_a, inv_b;
  std::vector<int> vmap;         // a vertex -> b vertex or -1
  std::vector<char> used_b;
  const std::function<bool(const IsoWitness&)>& visit;
  bool stopped = false;

  Search(const LabeledGraphView& a_, const LabeledGraphView& b_,
         const std::function<bool(const IsoWitness&)>& visit_)
      : a(a_), b(b_), adj_a(build_adj(a_)), adj_b(build_adj(b_)),
        inv_a(invariants(a_)), inv_b(invariants(b_)),
        vmap(a_.n, -1), used_b(b_.n, 0), visit(visit_) {}

  bool labels_match(const AdjKey& ka, const AdjKey& kb) const {
    auto ita = adj_a.find(ka);
    auto itb = adj_b.find(kb);
    size_t na = ita == adj_a.end() ? 0 : ita->second.size();
    size_t nb = itb == adj_b.end() ? 0 : itb->second.size();
    if (na != nb) return false;
    if (na == 0) return true;
    for (size_t i = 0; i < na; ++i)
      if (ita->second[i].first != itb->second[i].first) return false;
    return true;
  }

  void emit() {
    // Vertex map complete; enumerate edge bijections per pair group.
    std::vector<std::pair<AdjKey, AdjKey>> groups;
    for (const auto& [ka, ea] : adj_a) {
      AdjKey kb{vmap[ka.u], vmap[ka.v]};
      if (kb.u > kb.v) std::swap(kb.u, kb.v);
      groups.emplace_back(ka, kb);
    }
    IsoWitness w;
    w.vertex_map = vmap;
    w.edge_map.assign(a.edge_ends.size(), -1);
    emit_group(groups, 0, w);
  }

  void emit_group(const std::vector<std::pair<AdjKey, AdjKey>>& groups, size_t gi, IsoWitness& w) {
    if (stopped) return;
    if (gi == groups.size()) {
      if (visit(w)) stopped = true;
      return;
    }
    const auto& ea = adj_a.at(groups[gi].first);
    const auto& eb = adj_b.at(groups[gi].second);
    // Match edges with equal labels; iterate permutations within label runs.
    std::vector<int> perm(ea.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    // Deterministic enumeration of assignments ea[i] -> eb[perm[i]] with
    // label equality (labels are sorted, so runs align).
    match_run(ea, eb, 0, perm, groups, gi, w);
  }

  void match_run(const std::vector<std::pair<std::string, int>>& ea,
                 const std::vector<std::pair<std::string, int>>& eb, size_t i,
                 std::vector<int>& perm,
                 const std::vector<std::pair<AdjKey, AdjKey>>& groups, size_t gi, IsoWitness& w) {
    if (stopped) return;
    if (i == ea.size()) {
      for (size_t k = 0; k < ea.size(); ++k) w.edge_map[ea[k].second] = eb[perm[k]].second;
      emit_group(groups, gi + 1, w);
      return;
    }
    std::vector<char> taken(eb.size(), 0);
    for (size_t k = 0; k < i; ++k) taken[perm[k]] = 1;
    for (size_t j = 0; j < eb.size(); ++j) {
      if (taken[j] || eb[j].first != ea[i].first) continue;
      perm[i] = static_cast<int>(j);
      match_run(ea, eb, i + 1, perm, groups, gi, w);
      if (stopped) return;
    }
  }

  void extend(int vi) {
    if (stopped) return;
    if (vi == a.n) {
      emit();
      return;
    }
    for (int u = 0; u < b.n; ++u) {
      if (used_b[u] || inv_b[u] != inv_a[vi]) continue;
      bool ok = true;
      for (int w = 0; w <= vi && ok; ++w) {
        if (vmap[w] < 0 && w != vi) continue;
        int wu = (w == vi) ? u : vmap[w];
        AdjKey ka{std::min(vi, w), std::max(vi, w)};
        AdjKey kb{std::min(u, wu), std::max(u, wu)};
        if (!labels_match(ka, kb)) ok = false;
      }
      if (!ok) continue;
      vmap[vi] = u;
      used_b[u] = 1;
      extend(vi + 1);
      vmap[vi] = -1;
      used_b[u] = 0;
      if (stopped) return;
    }
  }
};

}  // namespace

bool enumerate_isomorphisms(const LabeledGraphView& a, const LabeledGraphView& b,
                            const std::function<bool(const IsoWitness&)>& visit) {
  if (a.n != b.n || a.edge_ends.size() != b.edge_ends.size()) return false;
  {
    // Quick invariant multiset check.
    auto ia = invariants(a), ib = invariants(b);
    std::sort(ia.begin(), ia.end());
    std::sort(ib.begin(), ib.end());
    if (ia != ib) return false;
  }
  Search s(a, b, visit);
  s.extend(0);
  return s.stopped;
}

std::optional<IsoWitness> find_isomorphism(
    const LabeledGraphView& a, const LabeledGraphView& b,
    const std::function<bool(const IsoWitness&)>& accept) {
  std::optional<IsoWitness> out;
  enumerate_isomorphisms(a, b, [&](const IsoWitness& w) {
    if (accept && !accept(w)) return false;
    out = w;
    return true;
  });
  return out;
}

}  // namespace plumbcalc
