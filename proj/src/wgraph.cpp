#include "plumbcalc/wgraph.hpp"

#include <algorithm>
#include <map>

#include "plumbcalc/iso.hpp"
#include "plumbcalc/rewrite.hpp"
#include "plumbcalc/seifert.hpp"

namespace plumbcalc {

using boost::multiprecision::gcd;

void validate_wgraph(const WGraph& w) {
  w.graph.check_valid();
  for (int e = 0; e < w.graph.edge_count(); ++e) {
    int y = DartGraph::representative(e);
    int yb = DartGraph::involution(y);
    const auto& [a1, b1] = w.ab[y];
    const auto& [a2, b2] = w.ab[yb];
    if (a1 != a2) throw GraphError("alpha differs across the involution");
    if (a1 <= 0) throw GraphError("alpha must be positive");
    if (b1 < 0 || b1 >= a1 || b2 < 0 || b2 >= a1) throw GraphError("beta out of range");
    if (gcd(a1, b1) != 1 || gcd(a1, b2) != 1) throw GraphError("(alpha,beta) not coprime");
    if ((b1 * b2 - 1) % a1 != 0 && a1 != 1)
      throw GraphError("beta reciprocity fails on edge " + w.graph.edge_id(e));
  }
  for (int v = 0; v < w.graph.vertex_count(); ++v) {
    if (!w.vw[v].weighted) {
      for (int d : w.graph.darts_into(v))
        if (w.ab[d].second <= 0 && w.ab[d].first > 1)
          throw GraphError("beta must be positive next to an unweighted vertex");
    } else if (w.vw[v].r > 0 && w.vw[v].s != 0) {
      throw GraphError("s must vanish when r > 0");
    }
  }
}

std::pair<Int, Int> chain_alpha_beta(const std::vector<long long>& b) {
  Convergents cv = cf_convergents(b);
  Int alpha = cv.c, beta = cv.d;
  if (alpha < 0) { alpha = -alpha; beta = -beta; }
  if (alpha == 0) throw GraphError("degenerate chain string");
  beta %= alpha;
  if (beta < 0) beta += alpha;
  return {alpha, beta};
}

std::vector<int> cut_set(const DecoratedPlumbingGraph& g) {
  std::vector<int> out;
  for (const auto& c : find_maximal_chains(g)) {
    if (c.cyclic || chain_boundary_incident(g, c) || c.edges.empty()) continue;
    size_t m = c.edges.size();
    if (m % 2 == 1) {
      out.push_back(c.edges[m / 2]);
    } else {
      int a = c.edges[m / 2 - 1], b = c.edges[m / 2];
      out.push_back(g.graph.edge_id(a) < g.graph.edge_id(b) ? a : b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

WGraph to_wgraph(const DecoratedPlumbingGraph& g) {
  validate_dpg(g);
  if (g.boundary_vertices().empty())
    throw GraphError("to_wgraph: closed graph without boundary is unsupported");
  // Accept reversed normal forms too: no rewrite site may match, but (-)
  // signs on length-0 chains are fine (they feed the edge sign).
  if (!find_sites(g).empty()) throw GraphError("to_wgraph requires an F-normal form");
  auto chains = find_maximal_chains(g);
  for (const auto& c : chains)
    if (c.cyclic) throw GraphError("to_wgraph: cyclic chain component");

  std::vector<char> on_chain(g.graph.vertex_count(), 0);
  for (const auto& c : chains)
    for (int v : c.verts) on_chain[v] = 1;

  WGraph w;
  std::map<int, int> widx;  // dpg vertex -> w vertex
  std::vector<long long> absorbed_r(g.graph.vertex_count(), 0);

  // Absorb boundary-incident chains.
  bool whole_component_piece = false;
  long long whole_component_arrows = 0;
  for (const auto& c : chains) {
    int arrows = 0;
    int interior_anchor = -1;
    for (int a : {c.anchor_left, c.anchor_right}) {
      if (a >= 0 && g.is_boundary(a)) arrows++;
      if (a >= 0 && g.is_interior(a)) interior_anchor = a;
    }
    if (arrows == 0) continue;
    if (interior_anchor >= 0) {
      absorbed_r[interior_anchor] += arrows;  // arrows == 1 here
    } else {
      // No interior anchor: the component is this chain plus its arrows.
      whole_component_piece = true;
      whole_component_arrows += arrows;
    }
  }

  if (whole_component_piece) {
    w.graph.add_vertex("piece0");
    w.vw.push_back({true, 0, whole_component_arrows, 0});
    validate_wgraph(w);
    return w;
  }

  for (int v = 0; v < g.graph.vertex_count(); ++v) {
    if (!g.is_interior(v) || on_chain[v]) continue;
    long long r = absorbed_r[v];
    int wi = w.graph.add_vertex(g.graph.vertex_id(v));
    w.vw.push_back({true, g.genus[v], r, r == 0 ? g.euler[v] : 0});
    widx[v] = wi;
  }

  // Cut the remaining maximal chains.
  int stub = 0;
  for (size_t ci = 0; ci < chains.size(); ++ci) {
    const auto& c = chains[ci];
    if (chain_boundary_incident(g, c)) continue;
    auto endpoint = [&](int anchor) -> int {
      if (anchor >= 0) return widx.at(anchor);
      int u = w.graph.add_vertex("st" + std::to_string(stub++));
      w.vw.push_back({false, 0, 0, 0});
      return u;
    };
    int left = endpoint(c.anchor_left);
    int right = endpoint(c.anchor_right);
    std::vector<long long> fwd, bwd;  // read from left / from right
    for (int v : c.verts) fwd.push_back(-g.euler[v]);
    bwd.assign(fwd.rbegin(), fwd.rend());
    for (long long x : fwd)
      if (x < 2) throw GraphError("to_wgraph: chain entry > -2 in a cut chain");
    int e = w.graph.add_edge("cut" + std::to_string(ci), left, right);
    // Dart 2e terminates at `right`, its involution at `left`.
    auto into_right = chain_alpha_beta(bwd);
    auto into_left = chain_alpha_beta(fwd);
    w.ab.resize(2 * e + 2);
    w.ab[2 * e] = into_right;
    w.ab[2 * e + 1] = into_left;
    int sgn = 1;
    char eps = 0;
    for (int ce : c.edges) {
      sgn *= g.sign[ce];
      eps ^= g.eps_weight[ce];
    }
    w.sign.push_back(sgn);
    w.eps_weight.push_back(eps);
  }
  validate_wgraph(w);
  return w;
}

namespace {

// Epsilon functional compatibility over the W-graph's own cycle space,
// restricted to the full subgraph on vertices with g >= 0 (unweighted
// vertices included).
bool eps_compatible(const WGraph& a, const WGraph& b, const IsoWitness& wit) {
  auto star_sub = [](const WGraph& w, std::vector<int>& emap) {
    DartGraph sub;
    std::vector<int> vmap(w.graph.vertex_count(), -1);
    for (int v = 0; v < w.graph.vertex_count(); ++v)
      if (!w.vw[v].weighted || w.vw[v].g >= 0) vmap[v] = sub.add_vertex(w.graph.vertex_id(v));
    for (int e = 0; e < w.graph.edge_count(); ++e) {
      int d = DartGraph::representative(e);
      int x = w.graph.origin(d), y = w.graph.terminus(d);
      if (vmap[x] < 0 || vmap[y] < 0) continue;
      sub.add_edge(w.graph.edge_id(e), vmap[x], vmap[y]);
      emap.push_back(e);
    }
    return sub;
  };
  std::vector<int> emap_a;
  DartGraph sub_a = star_sub(a, emap_a);
  auto basis = cycle_space_basis(sub_a, {});
  for (const auto& cyc : basis) {
    char va = 0, vb = 0;
    for (size_t se = 0; se < cyc.edge_vec.size(); ++se) {
      if (!cyc.edge_vec[se]) continue;
      int ae = emap_a[se];
      va ^= a.eps_weight[ae];
      vb ^= b.eps_weight[wit.edge_map[ae]];
    }
    if (va != vb) return false;
  }
  return true;
}

bool is_exceptional_A(const WGraph& w) {
  // (0,1,-) vertex with two (2,1)-edges to unweighted vertices.
  if (w.graph.vertex_count() != 3 || w.graph.edge_count() != 2) return false;
  int hub = -1, solid = 0;
  for (int v = 0; v < 3; ++v) {
    if (w.vw[v].weighted) {
      if (hub != -1) return false;
      hub = v;
    } else {
      solid++;
    }
  }
  if (hub < 0 || solid != 2) return false;
  if (w.vw[hub].g != 0 || w.vw[hub].r != 1) return false;
  for (int d = 0; d < w.graph.dart_count(); ++d)
    if (!(w.ab[d] == std::pair<Int, Int>(Int(2), Int(1)))) return false;
  return true;
}

bool is_exceptional_B(const WGraph& w) {
  return w.graph.vertex_count() == 1 && w.graph.edge_count() == 0 && w.vw[0].weighted &&
         w.vw[0].g == -1 && w.vw[0].r == 1;
}

}  // namespace

WEquivResult wgraph_equiv(const WGraph& a, const WGraph& b) {
  WEquivResult res;
  if ((is_exceptional_A(a) && is_exceptional_B(b)) || (is_exceptional_B(a) && is_exceptional_A(b))) {
    res.equivalent = true;
    res.exceptional_pair = true;
    return res;
  }
  auto view = [](const WGraph& w) {
    LabeledGraphView v;
    v.n = w.graph.vertex_count();
    for (int i = 0; i < v.n; ++i) {
      const auto& vw = w.vw[i];
      v.vlabel.push_back(vw.weighted ? "W:" + std::to_string(vw.g) + ":" + std::to_string(vw.r) +
                                           ":" + std::to_string(vw.s)
                                     : "U");
    }
    for (int e = 0; e < w.graph.edge_count(); ++e) {
      int d = DartGraph::representative(e);
      int x = w.graph.origin(d), y = w.graph.terminus(d);
      auto fmt = [&](const std::pair<Int, Int>& p) {
        return p.first.str() + "," + p.second.str();
      };
      std::string into_y = fmt(w.ab[d]), into_x = fmt(w.ab[DartGraph::involution(d)]);
      std::string sgn = w.sign[e] > 0 ? "+" : "-";
      v.add_edge(x, y, into_x + "/" + into_y + "/" + sgn, into_y + "/" + into_x + "/" + sgn);
    }
    return v;
  };
  auto wit = find_isomorphism(view(a), view(b),
                              [&](const IsoWitness& w) { return eps_compatible(a, b, w); });
  if (wit) {
    res.equivalent = true;
    res.witness = wit->vertex_map;
  }
  return res;
}

}  // namespace plumbcalc
