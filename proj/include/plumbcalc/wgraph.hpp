#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plumbcalc/plumbing.hpp"

namespace plumbcalc {

// Waldhausen graph of the reduced structure. Weighted vertices carry
// (g, r, s); unweighted vertices are solid-torus pieces. Darts carry (alpha,
// beta); edge pairs carry a sign and an epsilon parity weight.
struct WGraph {
  DartGraph graph;
  struct VWeight {
    bool weighted = true;
    long long g = 0;
    long long r = 0;
    long long s = 0;
  };
  std::vector<VWeight> vw;                    // per vertex
  std::vector<std::pair<Int, Int>> ab;        // per dart
  std::vector<int> sign;                      // per edge pair
  std::vector<char> eps_weight;               // per edge pair
};

void validate_wgraph(const WGraph& w);

// Reduced-structure W-graph of an F-normal-form decorated plumbing graph with
// boundary. One edge of each maximal chain not incident to a boundary vertex
// is cut (middle-most edge, ties to the lower edge id); boundary-incident
// chains and direct arrows are absorbed into r; dangling remnants become
// unweighted vertices. Cut chains carry (alpha, beta) = (c_k, d_k mod c_k)
// from the chain string read from each side.
WGraph to_wgraph(const DecoratedPlumbingGraph& g);

// (alpha, beta) of a cut chain string (entries >= 2, possibly empty).
std::pair<Int, Int> chain_alpha_beta(const std::vector<long long>& b);

// The cut set S: the middle-most edge of each maximal chain not incident to a
// boundary vertex (ties to the lower edge id). The (alpha, beta) weights do
// not depend on the position of the cut inside the chain.
std::vector<int> cut_set(const DecoratedPlumbingGraph& g);

struct WEquivResult {
  bool equivalent = false;
  bool exceptional_pair = false;             // the display (2.1) pair
  std::optional<std::vector<int>> witness;   // vertex map when an isomorphism exists
};

WEquivResult wgraph_equiv(const WGraph& a, const WGraph& b);

}  // namespace plumbcalc
