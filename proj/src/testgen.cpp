#include "plumbcalc/testgen.hpp"

namespace plumbcalc {

SingularPointSpec random_point_spec(std::mt19937& rng) {
  static const std::pair<long long, long long> cusps[] = {{2, 3}, {2, 5}, {3, 4}, {3, 5}, {2, 7}};
  std::uniform_int_distribution<int> nb(1, 3);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<int> cuspix(0, 4);
  std::uniform_int_distribution<int> tangent(0, 3);
  SingularPointSpec pt;
  pt.id = "P";
  int n = nb(rng);
  for (int i = 0; i < n; ++i) {
    BranchSpec b;
    b.component = "C" + std::to_string(i);
    if (kind(rng) == 0 && n > 1) {
      b.kind = BranchSpec::Kind::Smooth;
    } else {
      b.kind = BranchSpec::Kind::Cusp;
      auto [p, q] = cusps[cuspix(rng)];
      b.p = p;
      b.q = q;
    }
    b.tangent = "t" + std::to_string(tangent(rng));
    pt.branches.push_back(b);
  }
  // Distinct components make every (component, tangent) pair legal; a single
  // smooth branch is not singular, so force a cusp in that case.
  if (pt.branches.size() == 1 && pt.branches[0].kind == BranchSpec::Kind::Smooth) {
    pt.branches[0].kind = BranchSpec::Kind::Cusp;
    pt.branches[0].p = 2;
    pt.branches[0].q = 3;
  }
  return pt;
}

DecoratedPlumbingGraph random_resolution_graph(std::mt19937& rng, int max_vertices) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    SingularPointSpec pt = random_point_spec(rng);
    auto [g, hist] = resolve_singularity(pt);
    if (g.graph.vertex_count() <= max_vertices) return g;
  }
  // Fall back to the node graph.
  SingularPointSpec node;
  node.id = "P";
  node.branches.push_back({BranchSpec::Kind::Smooth, 1, 2, "t0", "C0"});
  node.branches.push_back({BranchSpec::Kind::Smooth, 1, 2, "t1", "C1"});
  return resolve_singularity(node).first;
}

DecoratedPlumbingGraph random_blow_ups(const DecoratedPlumbingGraph& g, std::mt19937& rng,
                                       int count) {
  DecoratedPlumbingGraph out = g;
  for (int i = 0; i < count; ++i) {
    std::vector<int> edges;
    for (int e = 0; e < out.graph.edge_count(); ++e) {
      int d = DartGraph::representative(e);
      if (out.sign[e] == 1 && out.is_interior(out.graph.origin(d)) &&
          out.is_interior(out.graph.terminus(d)))
        edges.push_back(e);
    }
    std::uniform_int_distribution<int> coin(0, 1);
    if (!edges.empty() && coin(rng) == 0) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(edges.size()) - 1);
      out = blow_up_edge(out, edges[pick(rng)]);
    } else {
      auto ints = out.interior_vertices();
      std::uniform_int_distribution<int> pick(0, static_cast<int>(ints.size()) - 1);
      out = blow_up_leaf(out, ints[pick(rng)]);
    }
  }
  return out;
}

ConfluenceReport confluence_selftest(uint64_t seed, int trials) {
  std::mt19937 rng(static_cast<uint32_t>(seed));
  ConfluenceReport rep;
  std::uniform_int_distribution<int> nblow(1, 4);
  for (int i = 0; i < trials; ++i) {
    DecoratedPlumbingGraph g = random_resolution_graph(rng);
    NormalForm base = normalize_resolution(g);
    DecoratedPlumbingGraph blown = random_blow_ups(g, rng, nblow(rng));
    NormalForm other = normalize_resolution(blown);
    rep.trials++;
    if (!dpg_equivalent(base.graph, other.graph)) rep.failures++;
  }
  return rep;
}

}  // namespace plumbcalc
