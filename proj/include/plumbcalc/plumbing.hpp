#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plumbcalc/dart_graph.hpp"
#include "plumbcalc/numeric.hpp"

namespace plumbcalc {

enum class VertexKind { Interior, Boundary };

// Decorated plumbing graph: interior/boundary split, genus and euler weights
// on interior vertices, a sign per edge pair, and a per-edge epsilon parity
// weight (defaults to sign < 0; orientation reversal stores the class
// explicitly through these weights).
struct DecoratedPlumbingGraph {
  DartGraph graph;
  std::vector<VertexKind> kind;      // per vertex
  std::vector<long long> genus;      // per vertex; meaningful on interior only
  std::vector<long long> euler;      // per vertex; meaningful on interior only
  std::vector<int> sign;             // per edge pair, +1 / -1
  std::vector<char> eps_weight;      // per edge pair, parity weight for epsilon

  bool is_interior(int v) const { return kind[v] == VertexKind::Interior; }
  bool is_boundary(int v) const { return kind[v] == VertexKind::Boundary; }
  std::vector<int> interior_vertices() const;
  std::vector<int> boundary_vertices() const;
  bool all_plus() const;
  // True if v has a boundary neighbor.
  bool adjacent_to_boundary(int v) const;
};

// Convenience builder used by tests and the rewrite engine.
class DpgBuilder {
 public:
  int interior(const std::string& id, long long euler, long long genus = 0);
  int boundary(const std::string& id);
  int edge(const std::string& id, int from, int to, int sign = +1);
  int edge(int from, int to, int sign = +1);
  DecoratedPlumbingGraph build() const { return g_; }

 private:
  DecoratedPlumbingGraph g_;
  int auto_edge_ = 0;
};

// Verifies all type invariants; throws GraphError naming the first violation.
void validate_dpg(const DecoratedPlumbingGraph& g, bool require_connected = true);

// Maximal chains. Chain vertices are interior, genus 0, degree 1 or 2, with
// no loop. Ends are anchored at a non-chain vertex (interior or boundary) or
// open (a degree-1 chain vertex). A bare edge between two non-chain vertices
// is a chain of length 0. A component consisting solely of chain vertices is
// returned with cyclic = true and must not be rewritten.
struct Chain {
  std::vector<int> verts;      // chain vertices in path order (empty if length 0)
  std::vector<int> edges;      // edge pairs along the chain, anchor edges included
  int anchor_left = -1;        // vertex index, or -1 for an open end
  int anchor_right = -1;
  bool cyclic = false;

  int length() const { return static_cast<int>(verts.size()); }
};

std::vector<Chain> find_maximal_chains(const DecoratedPlumbingGraph& g);

bool chain_boundary_incident(const DecoratedPlumbingGraph& g, const Chain& c);

struct IntersectionForm {
  std::vector<int> vertices;          // interior vertices, stored order
  std::vector<std::vector<Int>> m;    // symmetric
};

IntersectionForm intersection_form(const DecoratedPlumbingGraph& g);

enum class Definiteness { NegativeDefinite, PositiveDefinite, Indefinite, Degenerate };

std::string to_string(Definiteness d);

// Exact classification via the signature, computed by symmetric pivoting over
// rationals (handles zero leading minors).
Definiteness definiteness(const std::vector<std::vector<Int>>& m);
inline Definiteness definiteness(const IntersectionForm& f) { return definiteness(f.m); }

// Signature (n_plus, n_minus, n_zero).
struct Signature {
  int pos = 0, neg = 0, zero = 0;
};
Signature signature(const std::vector<std::vector<Int>>& m);

// Epsilon class on H1(Gamma*, A): Gamma* is the full subgraph on interior
// vertices with genus >= 0 plus all boundary vertices. Values are parities of
// eps_weight along each basis element.
struct EpsilonClass {
  std::vector<RelativeCycle> basis;  // cycles in the Gamma* subgraph's own indexing
  std::vector<char> value;           // per basis element
  std::vector<int> sub_edges;        // Gamma* edge -> original edge pair
};

EpsilonClass epsilon_class(const DecoratedPlumbingGraph& g);

// Evaluates the epsilon functional on an arbitrary mod-2 edge vector over the
// original edge pairs.
char epsilon_value(const DecoratedPlumbingGraph& g, const std::vector<char>& edge_vec);

}  // namespace plumbcalc
