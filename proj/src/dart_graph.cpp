#include "plumbcalc/dart_graph.hpp"

#include <algorithm>

namespace plumbcalc {

int DartGraph::add_vertex(const std::string& id) {
  if (vertex_index_.count(id)) throw GraphError("duplicate vertex id: " + id);
  int v = vertex_count();
  vertex_ids_.push_back(id);
  vertex_index_[id] = v;
  return v;
}

int DartGraph::add_edge(const std::string& id, int from, int to) {
  if (edge_index_.count(id)) throw GraphError("duplicate edge id: " + id);
  if (from < 0 || from >= vertex_count() || to < 0 || to >= vertex_count())
    throw GraphError("edge endpoint out of range: " + id);
  int e = edge_count();
  edge_ids_.push_back(id);
  from_.push_back(from);
  to_.push_back(to);
  edge_index_[id] = e;
  return e;
}

std::optional<int> DartGraph::find_vertex(const std::string& id) const {
  auto it = vertex_index_.find(id);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> DartGraph::find_edge(const std::string& id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

int DartGraph::degree(int v) const {
  if (v < 0 || v >= vertex_count()) throw GraphError("unknown vertex");
  int d = 0;
  for (int dart = 0; dart < dart_count(); ++dart)
    if (terminus(dart) == v) ++d;
  return d;
}

std::vector<int> DartGraph::darts_into(int v) const {
  std::vector<int> out;
  for (int dart = 0; dart < dart_count(); ++dart)
    if (terminus(dart) == v) out.push_back(dart);
  return out;
}

std::vector<int> DartGraph::edges_at(int v) const {
  std::vector<int> out;
  for (int e = 0; e < edge_count(); ++e)
    if (from_[e] == v || to_[e] == v) out.push_back(e);
  return out;
}

std::vector<std::vector<int>> DartGraph::connected_components() const {
  std::vector<int> comp(vertex_count(), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < vertex_count(); ++s) {
    if (comp[s] != -1) continue;
    std::vector<int> stack{s}, members;
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (int e = 0; e < edge_count(); ++e) {
        int w = -1;
        if (from_[e] == v) w = to_[e];
        else if (to_[e] == v) w = from_[e];
        if (w >= 0 && comp[w] == -1) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

void DartGraph::check_valid() const {
  for (int d = 0; d < dart_count(); ++d) {
    if (involution(d) == d) throw GraphError("involution has a fixed point");
    if (involution(involution(d)) != d) throw GraphError("involution not self-inverse");
    if (origin(involution(d)) != terminus(d) || terminus(involution(d)) != origin(d))
      throw GraphError("o(bar y) != t(y)");
  }
}

std::vector<RelativeCycle> cycle_space_basis(const DartGraph& g,
                                             const std::vector<int>& relative_to) {
  int n = g.vertex_count();
  std::vector<char> marked(n, 0);
  for (int v : relative_to) marked[v] = 1;

  // Quotient node of each vertex: marked vertices all map to node n.
  auto node = [&](int v) { return marked[v] ? n : v; };
  int nn = n + 1;

  // Spanning forest on the quotient graph, grown breadth-first from roots in
  // node order; parent_dart[w] terminates at w in the quotient.
  std::vector<int> parent_dart(nn, -1);
  std::vector<char> tree_edge(g.edge_count(), 0);
  std::vector<int> comp(nn, -1);
  for (int s = 0; s < nn; ++s) {
    bool present = (s == n) ? !relative_to.empty() : !marked[s];
    if (!present || comp[s] != -1) continue;
    comp[s] = s;
    std::vector<int> frontier{s};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int v : frontier) {
        for (int d = 0; d < g.dart_count(); ++d) {
          if (node(g.origin(d)) != v) continue;
          int w = node(g.terminus(d));
          if (comp[w] != -1) continue;
          comp[w] = s;
          parent_dart[w] = d;
          tree_edge[DartGraph::pair_of(d)] = 1;
          next.push_back(w);
        }
      }
      frontier = std::move(next);
    }
  }

  auto path_to_root = [&](int v) {
    std::vector<int> darts;  // from v up to root, each dart pointing toward root
    while (parent_dart[v] != -1) {
      int d = parent_dart[v];
      darts.push_back(DartGraph::involution(d));
      v = node(g.origin(d));
    }
    return darts;
  };

  std::vector<RelativeCycle> basis;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (tree_edge[e]) continue;
    int d = DartGraph::representative(e);
    int a = node(g.origin(d)), b = node(g.terminus(d));
    RelativeCycle c;
    // Walk root->a, then d, then b->root.
    auto up_a = path_to_root(a);
    std::reverse(up_a.begin(), up_a.end());
    for (int x : up_a) c.darts.push_back(DartGraph::involution(x));
    c.darts.push_back(d);
    for (int x : path_to_root(b)) c.darts.push_back(x);
    c.edge_vec.assign(g.edge_count(), 0);
    for (int x : c.darts) c.edge_vec[DartGraph::pair_of(x)] ^= 1;
    basis.push_back(std::move(c));
  }
  return basis;
}

}  // namespace plumbcalc
