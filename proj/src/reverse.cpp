#include "plumbcalc/reverse.hpp"

#include <algorithm>
#include <map>

#include "plumbcalc/rewrite.hpp"

namespace plumbcalc {

std::vector<long long> chain_dual(const std::vector<long long>& b) {
  for (long long x : b)
    if (x < 2) throw GraphError("chain_dual entry < 2");
  if (b.empty()) return {};
  // Runs of 2's separated by entries >= 3.
  std::vector<long long> twos;   // n0..ns
  std::vector<long long> bigs;   // m1..ms (entry = m+3)
  long long run = 0;
  for (long long x : b) {
    if (x == 2) {
      run++;
    } else {
      twos.push_back(run);
      run = 0;
      bigs.push_back(x - 3);
    }
  }
  twos.push_back(run);
  size_t s = bigs.size();
  std::vector<long long> out;
  if (s == 0) {
    out.push_back(twos[0] + 1);
    return out;
  }
  out.push_back(twos[0] + 2);
  for (size_t i = 1; i <= s; ++i) {
    for (long long k = 0; k < bigs[i - 1]; ++k) out.push_back(2);
    out.push_back(twos[i] + (i == s ? 2 : 3));
  }
  return out;
}

namespace {

bool node_form_component(const DecoratedPlumbingGraph& g, const Chain& c) {
  return c.length() >= 1 && c.anchor_left >= 0 && c.anchor_right >= 0 &&
         g.is_boundary(c.anchor_left) && g.is_boundary(c.anchor_right);
}

}  // namespace

DecoratedPlumbingGraph reverse_orientation(const DecoratedPlumbingGraph& g) {
  validate_dpg(g);
  if (!find_sites(g).empty())
    throw GraphError("reverse_orientation: input not in normal form");
  auto chains = find_maximal_chains(g);
  for (const auto& c : chains) {
    if (c.cyclic) throw GraphError("reverse_orientation: cyclic chain component");
    if (c.length() >= 1 && !node_form_component(g, c)) {
      for (int v : c.verts)
        if (g.euler[v] > -2)
          throw GraphError("reverse_orientation: chain weight > -2; input not in normal form");
      for (int e : c.edges)
        if (g.sign[e] != 1)
          throw GraphError("reverse_orientation: (-) edge inside a chain");
    }
  }

  std::vector<char> on_chain(g.graph.vertex_count(), 0);
  std::map<int, int> ccount;  // non-chain interior vertex -> c(v)
  for (const auto& c : chains) {
    if (c.length() == 0) continue;
    for (int v : c.verts) on_chain[v] = 1;
    for (int a : {c.anchor_left, c.anchor_right})
      if (a >= 0 && g.is_interior(a)) ccount[a]++;
  }

  DpgBuilder b;
  std::map<int, int> idx;
  for (int v = 0; v < g.graph.vertex_count(); ++v) {
    if (on_chain[v]) continue;
    if (g.is_boundary(v)) {
      idx[v] = b.boundary(g.graph.vertex_id(v));
    } else {
      long long c = ccount.count(v) ? ccount[v] : 0;
      idx[v] = b.interior(g.graph.vertex_id(v), -g.euler[v] - c, g.genus[v]);
    }
  }

  struct NewEps {
    int edge;
    char w;
  };
  std::vector<NewEps> eps_patch;
  int chain_no = 0;
  for (const auto& c : chains) {
    char total = 0;
    for (int e : c.edges) total ^= g.eps_weight[e];
    if (c.length() == 0) {
      int e = c.edges[0];
      int d = DartGraph::representative(e);
      int ne = b.edge(g.graph.edge_id(e), idx.at(g.graph.origin(d)), idx.at(g.graph.terminus(d)),
                      -g.sign[e]);
      eps_patch.push_back({ne, static_cast<char>(total ^ 1)});
    } else if (node_form_component(g, c)) {
      // arrow--(e)--arrow: euler negates, chain kept as is.
      int v = c.verts[0];
      int nv = b.interior(g.graph.vertex_id(v), -g.euler[v], g.genus[v]);
      int e0 = b.edge(g.graph.edge_id(c.edges[0]), idx.at(c.anchor_left), nv, +1);
      int e1 = b.edge(g.graph.edge_id(c.edges[1]), nv, idx.at(c.anchor_right), +1);
      eps_patch.push_back({e0, static_cast<char>(total ^ 1)});
      eps_patch.push_back({e1, 0});
    } else {
      std::vector<long long> bs;
      for (int v : c.verts) bs.push_back(-g.euler[v]);
      std::vector<long long> dual = chain_dual(bs);
      std::string stem = "c" + std::to_string(chain_no) + "_";
      std::vector<int> nvs;
      for (size_t j = 0; j < dual.size(); ++j)
        nvs.push_back(b.interior(stem + std::to_string(j), -dual[j], 0));
      std::vector<int> nedges;
      if (c.anchor_left >= 0)
        nedges.push_back(b.edge(stem + "l", idx.at(c.anchor_left), nvs.front(), +1));
      for (size_t j = 0; j + 1 < nvs.size(); ++j)
        nedges.push_back(b.edge(stem + "m" + std::to_string(j), nvs[j], nvs[j + 1], +1));
      if (c.anchor_right >= 0)
        nedges.push_back(b.edge(stem + "r", nvs.back(), idx.at(c.anchor_right), +1));
      for (size_t j = 0; j < nedges.size(); ++j)
        eps_patch.push_back({nedges[j], static_cast<char>(j == 0 ? (total ^ 1) : 0)});
    }
    chain_no++;
  }

  DecoratedPlumbingGraph out = b.build();
  for (const auto& ep : eps_patch) out.eps_weight[ep.edge] = ep.w;
  validate_dpg(out);
  return out;
}

}  // namespace plumbcalc
