#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plumbcalc/gcover.hpp"

namespace plumbcalc {

// Restriction of a G-combinatorics to the lifted full subgraph over the base
// subgraph of a subcurve away from the branch locus.
struct SubCombinatorics {
  GCombinatorics gc;
  std::vector<int> base_vertices;   // source vertices of Gamma_C(C0)
  std::vector<int> lifted_vertices;
  std::vector<int> lifted_edges;    // lifted edge pairs inside the subgraph
  std::set<std::string> c0;         // component ids of C0
};

// components: ids of the subcurve's components; branch: ids of the branch
// locus components (must be disjoint from components).
SubCombinatorics subcombinatorics(const GCombinatorics& gc,
                                  const std::set<std::string>& components,
                                  const std::set<std::string>& branch);

// Number of irreducible components of the pull-back of one component.
long long splitting_number(const GCombinatorics& gc, const std::string& component);

long long connected_number(const SubCombinatorics& sc);

// Splitting type for a double cover: the unordered pair {m1, m2} with
// m1 + m2 = C1.C2, computed by contracting lifted exceptional clusters with
// Noether multiplicities from the blow-up history.
std::pair<long long, long long> splitting_type(const GCombinatorics& gc, const std::string& c1,
                                               const std::string& c2,
                                               const std::set<std::string>& branch);

struct SplittingGraph {
  DartGraph graph;
  std::vector<int> part;                        // 1 = lifted component, 2 = cluster
  std::vector<std::vector<int>> action;         // [group element][vertex]
};

SplittingGraph splitting_graph(const SubCombinatorics& sc);

// Branch locus of a cover datum: Str components with nontrivial meridian.
std::set<std::string> branch_locus(const CoverDatum& cd);

}  // namespace plumbcalc
