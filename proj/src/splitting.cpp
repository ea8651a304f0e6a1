#include "plumbcalc/splitting.hpp"

#include <algorithm>
#include <map>

namespace plumbcalc {

std::set<std::string> branch_locus(const CoverDatum& cd) {
  std::set<std::string> out;
  for (int v = 0; v < cd.source.graph.vertex_count(); ++v)
    if (cd.source.is_str(v) && cd.meridian[v] != 0) out.insert(cd.source.graph.vertex_id(v));
  return out;
}

SubCombinatorics subcombinatorics(const GCombinatorics& gc,
                                  const std::set<std::string>& components,
                                  const std::set<std::string>& branch) {
  for (const auto& c : components)
    if (branch.count(c))
      throw GraphError("subcurve shares a component with the branch locus: " + c);
  const auto& m = gc.datum.source;
  SubCombinatorics sc;
  sc.gc = gc;
  sc.c0 = components;

  // Points of the combinatorics: on C0 / on the branch locus.
  std::map<std::string, bool> on_c0, on_branch;
  for (const auto& p : m.points) {
    bool c0 = false, br = false;
    for (const auto& b : p.branches) {
      if (components.count(b.component)) c0 = true;
      if (branch.count(b.component)) br = true;
    }
    on_c0[p.id] = c0;
    on_branch[p.id] = br;
  }

  std::vector<char> base_in(m.graph.vertex_count(), 0);
  for (int v = 0; v < m.graph.vertex_count(); ++v) {
    if (m.is_str(v)) {
      base_in[v] = components.count(m.graph.vertex_id(v)) ? 1 : 0;
    } else {
      const std::string& p = m.over[v];
      base_in[v] = (on_c0[p] && !on_branch[p]) ? 1 : 0;
    }
    if (base_in[v]) sc.base_vertices.push_back(v);
  }
  for (int w = 0; w < gc.graph.vertex_count(); ++w)
    if (base_in[gc.pr_vertex[w]]) sc.lifted_vertices.push_back(w);
  for (int e = 0; e < gc.graph.edge_count(); ++e) {
    int d = DartGraph::representative(e);
    if (base_in[gc.pr_vertex[gc.graph.origin(d)]] && base_in[gc.pr_vertex[gc.graph.terminus(d)]])
      sc.lifted_edges.push_back(e);
  }
  return sc;
}

long long splitting_number(const GCombinatorics& gc, const std::string& component) {
  int v = gc.datum.source.vertex_of(component);
  if (!gc.datum.source.is_str(v)) throw GraphError("not a component: " + component);
  if (gc.datum.meridian[v] != 0)
    throw GraphError("component lies in the branch locus: " + component);
  long long n = gc.fiber_size(v);
  auto [gv, hv] = vertex_groups(gc.datum, v);
  (void)hv;
  if (n != gc.datum.group.order() / gv.order())
    throw GraphError("internal: fiber size differs from the index of G_v");
  return n;
}

namespace {

// Connected components of the lifted subgraph; returns component index per
// lifted vertex (-1 outside).
std::vector<int> sub_components(const SubCombinatorics& sc, int* count) {
  const auto& g = sc.gc.graph;
  std::vector<int> comp(g.vertex_count(), -1);
  std::vector<char> in(g.vertex_count(), 0);
  for (int w : sc.lifted_vertices) in[w] = 1;
  int c = 0;
  for (int s : sc.lifted_vertices) {
    if (comp[s] != -1) continue;
    comp[s] = c;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : sc.lifted_edges) {
        int d = DartGraph::representative(e);
        int a = g.origin(d), b = g.terminus(d);
        int o = (a == v) ? b : (b == v ? a : -1);
        if (o >= 0 && comp[o] == -1) {
          comp[o] = c;
          stack.push_back(o);
        }
      }
    }
    ++c;
  }
  *count = c;
  return comp;
}

}  // namespace

long long connected_number(const SubCombinatorics& sc) {
  int count = 0;
  sub_components(sc, &count);
  return count;
}

std::pair<long long, long long> splitting_type(const GCombinatorics& gc, const std::string& c1,
                                               const std::string& c2,
                                               const std::set<std::string>& branch) {
  if (gc.datum.group.order() != 2)
    throw GraphError("splitting type is defined for double covers only");
  if (splitting_number(gc, c1) != 2 || splitting_number(gc, c2) != 2)
    throw GraphError("splitting type requires both components to split");
  const auto& m = gc.datum.source;

  SubCombinatorics sc = subcombinatorics(gc, {c1, c2}, branch);
  int v1 = m.vertex_of(c1), v2 = m.vertex_of(c2);
  std::vector<int> lifts1, lifts2;
  for (int w : sc.lifted_vertices) {
    if (gc.pr_vertex[w] == v1) lifts1.push_back(w);
    if (gc.pr_vertex[w] == v2) lifts2.push_back(w);
  }

  // Clusters: components of the lifted subgraph minus lifted Str vertices.
  SubCombinatorics clusters = sc;
  clusters.lifted_vertices.clear();
  for (int w : sc.lifted_vertices)
    if (!m.is_str(gc.pr_vertex[w])) clusters.lifted_vertices.push_back(w);
  clusters.lifted_edges.clear();
  for (int e : sc.lifted_edges) {
    int d = DartGraph::representative(e);
    if (!m.is_str(gc.pr_vertex[gc.graph.origin(d)]) &&
        !m.is_str(gc.pr_vertex[gc.graph.terminus(d)]))
      clusters.lifted_edges.push_back(e);
  }
  int ncl = 0;
  std::vector<int> cl = sub_components(clusters, &ncl);

  // Noether local intersection per base point.
  auto local_intersection = [&](const std::string& point) {
    long long total = 0;
    for (const auto& rec : m.history.records) {
      if (rec.point != point) continue;
      long long ma = 0, mb = 0;
      for (const auto& [id, mult] : rec.objects) {
        if (id == c1) ma = mult;
        if (id == c2) mb = mult;
      }
      total += ma * mb;
    }
    return total;
  };

  std::map<std::pair<int, int>, long long> pairs;  // (lift1, lift2) -> intersection
  // Cluster contributions.
  for (int k = 0; k < ncl; ++k) {
    std::set<int> adj1, adj2;
    std::string point;
    for (int e : sc.lifted_edges) {
      int d = DartGraph::representative(e);
      int a = gc.graph.origin(d), b = gc.graph.terminus(d);
      for (int swap = 0; swap < 2; ++swap) {
        int x = swap ? b : a, y = swap ? a : b;
        if (cl[x] == k) {
          point = m.over[gc.pr_vertex[x]];
          if (std::count(lifts1.begin(), lifts1.end(), y)) adj1.insert(y);
          if (std::count(lifts2.begin(), lifts2.end(), y)) adj2.insert(y);
        }
      }
    }
    if (adj1.empty() || adj2.empty()) continue;
    if (adj1.size() > 1 || adj2.size() > 1)
      throw GraphError("splitting type: ambiguous cluster attribution (unsupported)");
    pairs[{*adj1.begin(), *adj2.begin()}] += local_intersection(point);
  }
  // Direct lifted Str-Str edges.
  for (int e : sc.lifted_edges) {
    int d = DartGraph::representative(e);
    int a = gc.graph.origin(d), b = gc.graph.terminus(d);
    bool a1 = std::count(lifts1.begin(), lifts1.end(), a), b1 = std::count(lifts1.begin(), lifts1.end(), b);
    bool a2 = std::count(lifts2.begin(), lifts2.end(), a), b2 = std::count(lifts2.begin(), lifts2.end(), b);
    if (a1 && b2) pairs[{a, b}] += 1;
    else if (a2 && b1) pairs[{b, a}] += 1;
  }

  long long m1 = pairs[{lifts1[0], lifts2[0]}];
  long long m2 = pairs[{lifts1[0], lifts2[1]}];
  // Deck symmetry.
  if (pairs[{lifts1[1], lifts2[1]}] != m1 || pairs[{lifts1[1], lifts2[0]}] != m2)
    throw GraphError("splitting type: deck symmetry violated");
  if (m1 < m2) std::swap(m1, m2);
  return {m1, m2};
}

SplittingGraph splitting_graph(const SubCombinatorics& sc) {
  const auto& gc = sc.gc;
  const auto& m = gc.datum.source;
  SplittingGraph sg;

  std::vector<int> strs;
  std::map<int, int> str_index;  // lifted vertex -> sg vertex
  for (int w : sc.lifted_vertices) {
    if (m.is_str(gc.pr_vertex[w])) {
      str_index[w] = sg.graph.add_vertex(gc.graph.vertex_id(w));
      sg.part.push_back(1);
      strs.push_back(w);
    }
  }

  SubCombinatorics gamma0 = sc;
  gamma0.lifted_vertices.clear();
  for (int w : sc.lifted_vertices)
    if (!m.is_str(gc.pr_vertex[w])) gamma0.lifted_vertices.push_back(w);
  gamma0.lifted_edges.clear();
  std::vector<int> strstr_edges;
  for (int e : sc.lifted_edges) {
    int d = DartGraph::representative(e);
    bool sa = m.is_str(gc.pr_vertex[gc.graph.origin(d)]);
    bool sb = m.is_str(gc.pr_vertex[gc.graph.terminus(d)]);
    if (!sa && !sb) gamma0.lifted_edges.push_back(e);
    if (sa && sb) strstr_edges.push_back(e);
  }
  int ncl = 0;
  std::vector<int> cl = sub_components(gamma0, &ncl);

  std::vector<int> cluster_vertex(ncl, -1);
  for (int k = 0; k < ncl; ++k) {
    cluster_vertex[k] = sg.graph.add_vertex("w_cl" + std::to_string(k));
    sg.part.push_back(2);
  }
  std::map<int, int> edge_vertex;
  for (int e : strstr_edges) {
    edge_vertex[e] = sg.graph.add_vertex("w_" + gc.graph.edge_id(e));
    sg.part.push_back(2);
  }

  // Edges of the bipartite graph.
  int xe = 0;
  std::set<std::pair<int, int>> present;
  for (int e : sc.lifted_edges) {
    int d = DartGraph::representative(e);
    int a = gc.graph.origin(d), b = gc.graph.terminus(d);
    for (int swap = 0; swap < 2; ++swap) {
      int v = swap ? b : a, o = swap ? a : b;
      if (!str_index.count(v)) continue;
      int wk = -1;
      if (edge_vertex.count(e)) wk = edge_vertex[e];
      else if (cl[o] >= 0) wk = cluster_vertex[cl[o]];
      if (wk < 0) continue;
      if (present.insert({str_index[v], wk}).second)
        sg.graph.add_edge("s" + std::to_string(xe++), str_index[v], wk);
    }
  }

  // Induced action.
  int n = gc.datum.group.order();
  sg.action.assign(n, std::vector<int>(sg.graph.vertex_count(), -1));
  for (int x = 0; x < n; ++x) {
    for (int w : strs) sg.action[x][str_index[w]] = str_index.at(gc.vertex_action[x][w]);
    for (int w : gamma0.lifted_vertices)
      if (cl[w] >= 0)
        sg.action[x][cluster_vertex[cl[w]]] = cluster_vertex[cl[gc.vertex_action[x][w]]];
    for (int e : strstr_edges)
      sg.action[x][edge_vertex[e]] = edge_vertex.at(gc.edge_action[x][e]);
  }
  return sg;
}

}  // namespace plumbcalc
