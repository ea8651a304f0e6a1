#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plumbcalc/curves.hpp"
#include "plumbcalc/group.hpp"
#include "plumbcalc/mpg.hpp"
#include "plumbcalc/numeric.hpp"

namespace plumbcalc {

// Combinatorial residue of a surjection theta: a finite group, the meridian
// image of every vertex of the combinatorics, and extra generator images for
// positive-genus vertices.
struct CoverDatum {
  FiniteGroup group;
  MarkedCombinatorics source;
  std::vector<int> meridian;                 // per source vertex
  std::map<int, std::vector<int>> extra;     // vertex -> extra generator images
  std::vector<std::string> warnings;
};

// Replays the blow-up history to extend a Str-only assignment to every
// exceptional vertex; the group must be abelian.
CoverDatum make_cover_datum(const MarkedCombinatorics& m, const FiniteGroup& g,
                            const std::map<std::string, int>& str_meridians,
                            const std::map<std::string, std::vector<int>>& extra = {});

// Cover datum with an explicit full meridian map (any group).
CoverDatum make_cover_datum_full(const MarkedCombinatorics& m, const FiniteGroup& g,
                                 const std::map<std::string, int>& meridians,
                                 const std::map<std::string, std::vector<int>>& extra = {});

void validate_cover(const CoverDatum& cd);

// H_v = <meridian(v)>; G_v = <meridian(v), meridians of neighbors, extra(v)>.
std::pair<Subgroup, Subgroup> vertex_groups(const CoverDatum& cd, int v);  // (G_v, H_v)

// Hermite basis [[c,0],[b,a]] of ker(Z^2 -> G, (u,v) -> s^u f^v) with
// s = meridian(o(y)), f = meridian(t(y)).
Mat2 edge_matrix(const CoverDatum& cd, int dart);

struct GCombinatorics {
  CoverDatum datum;
  DartGraph graph;                       // lifted graph
  std::vector<long long> g_theta;        // per lifted vertex
  std::vector<Rat> e_theta;
  std::vector<bool> e_theta_integral;
  std::vector<Mat2> m_theta;             // per lifted dart
  std::vector<int> pr_vertex;            // lifted vertex -> source vertex
  std::vector<int> pr_edge;              // lifted edge pair -> source edge pair
  std::vector<std::vector<int>> vertex_action;  // [group element][lifted vertex]
  std::vector<std::vector<int>> edge_action;    // [group element][lifted edge pair]

  int fiber_size(int source_vertex) const;
};

GCombinatorics build_gcombinatorics(const CoverDatum& cd);

// The lifted graph as a modified plumbing graph (Gamma^theta, g^theta,
// e^theta, m^theta). Requires every e_theta to be integral.
ModifiedPlumbingGraph to_mpg(const GCombinatorics& gc);

struct GEquivWitness {
  std::vector<int> base_map;     // source vertex map
  std::vector<int> lifted_map;   // lifted vertex map
  std::vector<int> tau;          // group automorphism
};

std::optional<GEquivWitness> gequiv(const GCombinatorics& a, const GCombinatorics& b);

}  // namespace plumbcalc
