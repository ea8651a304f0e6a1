#include "plumbcalc/plumbing.hpp"

#include <algorithm>
#include <map>

namespace plumbcalc {

std::vector<int> DecoratedPlumbingGraph::interior_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < graph.vertex_count(); ++v)
    if (is_interior(v)) out.push_back(v);
  return out;
}

std::vector<int> DecoratedPlumbingGraph::boundary_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < graph.vertex_count(); ++v)
    if (is_boundary(v)) out.push_back(v);
  return out;
}

bool DecoratedPlumbingGraph::all_plus() const {
  return std::all_of(sign.begin(), sign.end(), [](int s) { return s > 0; });
}

bool DecoratedPlumbingGraph::adjacent_to_boundary(int v) const {
  for (int e : graph.edges_at(v)) {
    int d = DartGraph::representative(e);
    int a = graph.origin(d), b = graph.terminus(d);
    int w = (a == v) ? b : a;
    if (is_boundary(w)) return true;
  }
  return false;
}

int DpgBuilder::interior(const std::string& id, long long euler, long long genus) {
  int v = g_.graph.add_vertex(id);
  g_.kind.push_back(VertexKind::Interior);
  g_.genus.push_back(genus);
  g_.euler.push_back(euler);
  return v;
}

int DpgBuilder::boundary(const std::string& id) {
  int v = g_.graph.add_vertex(id);
  g_.kind.push_back(VertexKind::Boundary);
  g_.genus.push_back(0);
  g_.euler.push_back(0);
  return v;
}

int DpgBuilder::edge(const std::string& id, int from, int to, int sign) {
  int e = g_.graph.add_edge(id, from, to);
  g_.sign.push_back(sign);
  g_.eps_weight.push_back(sign < 0 ? 1 : 0);
  return e;
}

int DpgBuilder::edge(int from, int to, int sign) {
  return edge("e" + std::to_string(auto_edge_++), from, to, sign);
}

void validate_dpg(const DecoratedPlumbingGraph& g, bool require_connected) {
  g.graph.check_valid();
  int n = g.graph.vertex_count();
  if (static_cast<int>(g.kind.size()) != n || static_cast<int>(g.genus.size()) != n ||
      static_cast<int>(g.euler.size()) != n)
    throw GraphError("vertex weight arrays out of sync");
  if (static_cast<int>(g.sign.size()) != g.graph.edge_count() ||
      static_cast<int>(g.eps_weight.size()) != g.graph.edge_count())
    throw GraphError("edge weight arrays out of sync");
  for (int e = 0; e < g.graph.edge_count(); ++e)
    if (g.sign[e] != 1 && g.sign[e] != -1)
      throw GraphError("edge sign must be +1 or -1: " + g.graph.edge_id(e));
  for (int v = 0; v < n; ++v) {
    if (g.is_boundary(v) && g.graph.degree(v) > 1)
      throw GraphError("boundary vertex of degree > 1: " + g.graph.vertex_id(v));
  }
  if (require_connected && n > 0 && g.graph.connected_components().size() != 1)
    throw GraphError("graph is not connected");
}

namespace {

bool chain_vertex(const DecoratedPlumbingGraph& g, int v) {
  if (!g.is_interior(v) || g.genus[v] != 0) return false;
  int d = g.graph.degree(v);
  if (d < 1 || d > 2) return false;
  for (int e : g.graph.edges_at(v))
    if (g.graph.is_loop(e)) return false;
  return true;
}

}  // namespace

std::vector<Chain> find_maximal_chains(const DecoratedPlumbingGraph& g) {
  const DartGraph& gr = g.graph;
  int n = gr.vertex_count();
  std::vector<char> is_chain(n, 0);
  for (int v = 0; v < n; ++v) is_chain[v] = chain_vertex(g, v);

  std::vector<char> used(n, 0);
  std::vector<Chain> out;

  auto other_end = [&](int e, int v) {
    int d = DartGraph::representative(e);
    return gr.origin(d) == v ? gr.terminus(d) : gr.origin(d);
  };

  for (int s = 0; s < n; ++s) {
    if (!is_chain[s] || used[s]) continue;
    // Walk left as far as possible, then emit rightwards.
    Chain c;
    int cur = s, prev_edge = -1;
    bool cyc = false;
    while (true) {
      int next = -1, next_edge = -1;
      for (int e : gr.edges_at(cur)) {
        if (e == prev_edge) continue;
        int w = other_end(e, cur);
        if (is_chain[w]) { next = w; next_edge = e; }
        break;  // degree <= 2: at most one candidate besides prev_edge
      }
      if (next == -1 || !is_chain[next]) break;
      if (next == s) { cyc = true; break; }
      prev_edge = next_edge;
      cur = next;
    }
    if (cyc) {
      // Pure cycle component.
      c.cyclic = true;
      int v = s, pe = -1;
      do {
        c.verts.push_back(v);
        used[v] = 1;
        for (int e : gr.edges_at(v)) {
          if (e == pe) continue;
          c.edges.push_back(e);
          pe = e;
          v = other_end(e, v);
          break;
        }
      } while (v != s);
      out.push_back(std::move(c));
      continue;
    }
    // cur is the leftmost chain vertex; find its left anchor edge if any.
    int left_anchor = -1, left_edge = -1;
    for (int e : gr.edges_at(cur)) {
      int w = other_end(e, cur);
      if (!is_chain[w]) { left_anchor = w; left_edge = e; break; }
    }
    // But if cur has degree 2 with both neighbors chain vertices we came the
    // wrong way; the walk above guarantees this does not happen.
    if (left_edge != -1) c.edges.push_back(left_edge);
    c.anchor_left = left_anchor;
    int prev = left_edge;
    int v = cur;
    while (true) {
      c.verts.push_back(v);
      used[v] = 1;
      int next = -1, next_edge = -1;
      for (int e : gr.edges_at(v)) {
        if (e == prev) continue;
        next_edge = e;
        next = other_end(e, v);
        break;
      }
      if (next_edge == -1) { c.anchor_right = -1; break; }  // open end
      c.edges.push_back(next_edge);
      if (!is_chain[next]) { c.anchor_right = next; break; }
      prev = next_edge;
      v = next;
    }
    out.push_back(std::move(c));
  }

  // Length-0 chains: edges with both endpoints non-chain.
  for (int e = 0; e < gr.edge_count(); ++e) {
    int d = DartGraph::representative(e);
    int a = gr.origin(d), b = gr.terminus(d);
    if (!is_chain[a] && !is_chain[b]) {
      Chain c;
      c.edges = {e};
      c.anchor_left = a;
      c.anchor_right = b;
      out.push_back(std::move(c));
    }
  }
  return out;
}

bool chain_boundary_incident(const DecoratedPlumbingGraph& g, const Chain& c) {
  if (c.cyclic) return false;
  if (c.anchor_left >= 0 && g.is_boundary(c.anchor_left)) return true;
  if (c.anchor_right >= 0 && g.is_boundary(c.anchor_right)) return true;
  return false;
}

IntersectionForm intersection_form(const DecoratedPlumbingGraph& g) {
  IntersectionForm f;
  f.vertices = g.interior_vertices();
  std::map<int, int> pos;
  for (size_t i = 0; i < f.vertices.size(); ++i) pos[f.vertices[i]] = static_cast<int>(i);
  size_t r = f.vertices.size();
  f.m.assign(r, std::vector<Int>(r, Int(0)));
  for (size_t i = 0; i < r; ++i) f.m[i][i] = Int(g.euler[f.vertices[i]]);
  for (int d = 0; d < g.graph.dart_count(); ++d) {
    int o = g.graph.origin(d), t = g.graph.terminus(d);
    if (!g.is_interior(o) || !g.is_interior(t)) continue;
    if (o == t) {
      f.m[pos[o]][pos[o]] += 1;  // each loop dart with o = t adds 1, so a loop adds 2
    } else if (d % 2 == 0) {
      f.m[pos[o]][pos[t]] += 1;
      f.m[pos[t]][pos[o]] += 1;
    }
  }
  return f;
}

std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::NegativeDefinite: return "negative_definite";
    case Definiteness::PositiveDefinite: return "positive_definite";
    case Definiteness::Indefinite: return "indefinite";
    case Definiteness::Degenerate: return "degenerate";
  }
  return "?";
}

Signature signature(const std::vector<std::vector<Int>>& m) {
  size_t n = m.size();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = Rat(m[i][j]);
  std::vector<char> done(n, 0);
  Signature sig;
  size_t remaining = n;
  while (remaining > 0) {
    int p = -1;
    for (size_t i = 0; i < n; ++i)
      if (!done[i] && a[i][i] != 0) { p = static_cast<int>(i); break; }
    if (p < 0) {
      // All active diagonal entries vanish. If some off-diagonal entry is
      // nonzero, the congruence x_i -> x_i + x_j makes a[i][i] = 2 a[i][j].
      int pi = -1, pj = -1;
      for (size_t i = 0; i < n && pi < 0; ++i) {
        if (done[i]) continue;
        for (size_t j = 0; j < n; ++j)
          if (!done[j] && j != i && a[i][j] != 0) { pi = static_cast<int>(i); pj = static_cast<int>(j); break; }
      }
      if (pi < 0) {
        sig.zero += static_cast<int>(remaining);
        break;
      }
      for (size_t j = 0; j < n; ++j)
        if (!done[j]) a[pi][j] += a[pj][j];
      for (size_t i = 0; i < n; ++i)
        if (!done[i]) a[i][pi] += a[i][pj];
      continue;
    }
    Rat piv = a[p][p];
    if (piv > 0) sig.pos++; else sig.neg++;
    done[p] = 1;
    remaining--;
    for (size_t i = 0; i < n; ++i) {
      if (done[i] || a[i][p] == 0) continue;
      Rat f = a[i][p] / piv;
      for (size_t j = 0; j < n; ++j)
        if (!done[j]) a[i][j] -= f * a[p][j];
    }
  }
  return sig;
}

Definiteness definiteness(const std::vector<std::vector<Int>>& m) {
  if (m.empty()) return Definiteness::NegativeDefinite;  // empty form, vacuous
  int n = static_cast<int>(m.size());
  // Leading principal minors by fraction-free elimination. When none vanish,
  // their signs decide; a zero minor falls back to the signature pivoting.
  {
    std::vector<std::vector<Int>> a = m;
    Int prev(1);
    bool zero_minor = false;
    int neg_pattern = 0, pos_pattern = 0;
    for (int k = 0; k < n && !zero_minor; ++k) {
      // After k steps a[k][k] holds the k+1-st leading minor (Bareiss).
      if (a[k][k] == 0) {
        zero_minor = true;
        break;
      }
      Int minor = a[k][k];
      if ((k % 2 == 0) == (minor < 0)) neg_pattern++;
      if (minor > 0) pos_pattern++;
      for (int i = k + 1; i < n; ++i)
        for (int j = k + 1; j < n; ++j)
          a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      prev = a[k][k];
    }
    if (!zero_minor) {
      if (neg_pattern == n) return Definiteness::NegativeDefinite;
      if (pos_pattern == n) return Definiteness::PositiveDefinite;
      return Definiteness::Indefinite;
    }
  }
  Signature s = signature(m);
  if (s.zero > 0) return Definiteness::Degenerate;
  if (s.neg == n) return Definiteness::NegativeDefinite;
  if (s.pos == n) return Definiteness::PositiveDefinite;
  return Definiteness::Indefinite;
}

EpsilonClass epsilon_class(const DecoratedPlumbingGraph& g) {
  // Build Gamma*: interior vertices with genus >= 0, plus boundary vertices.
  DartGraph sub;
  std::vector<int> vmap(g.graph.vertex_count(), -1);
  std::vector<int> marks;
  for (int v = 0; v < g.graph.vertex_count(); ++v) {
    bool keep = g.is_boundary(v) || g.genus[v] >= 0;
    if (!keep) continue;
    vmap[v] = sub.add_vertex(g.graph.vertex_id(v));
    if (g.is_boundary(v)) marks.push_back(vmap[v]);
  }
  EpsilonClass out;
  for (int e = 0; e < g.graph.edge_count(); ++e) {
    int d = DartGraph::representative(e);
    int a = g.graph.origin(d), b = g.graph.terminus(d);
    if (vmap[a] < 0 || vmap[b] < 0) continue;
    sub.add_edge(g.graph.edge_id(e), vmap[a], vmap[b]);
    out.sub_edges.push_back(e);
  }
  out.basis = cycle_space_basis(sub, marks);
  for (const auto& c : out.basis) {
    char v = 0;
    for (size_t se = 0; se < c.edge_vec.size(); ++se)
      if (c.edge_vec[se]) v ^= g.eps_weight[out.sub_edges[se]];
    out.value.push_back(v);
  }
  return out;
}

char epsilon_value(const DecoratedPlumbingGraph& g, const std::vector<char>& edge_vec) {
  char v = 0;
  for (size_t e = 0; e < edge_vec.size(); ++e)
    if (edge_vec[e]) v ^= g.eps_weight[e];
  return v;
}

}  // namespace plumbcalc
