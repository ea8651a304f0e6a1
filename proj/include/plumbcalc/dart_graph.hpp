#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace plumbcalc {

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite graph as oriented edge pairs (darts). Darts are stored in pairs:
// dart 2k is the forward dart of edge pair k, dart 2k+1 its inverse, so the
// involution is index^1. Iteration order is insertion order throughout.
class DartGraph {
 public:
  DartGraph() = default;

  int add_vertex(const std::string& id);
  // Adds the pair {y, ybar} with o(y)=from, t(y)=to. Returns the pair index.
  int add_edge(const std::string& id, int from, int to);

  int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
  int edge_count() const { return static_cast<int>(edge_ids_.size()); }
  int dart_count() const { return 2 * edge_count(); }

  const std::string& vertex_id(int v) const { return vertex_ids_[v]; }
  const std::string& edge_id(int e) const { return edge_ids_[e]; }
  std::string dart_id(int d) const {
    return d % 2 == 0 ? edge_ids_[d / 2] : edge_ids_[d / 2] + "'";
  }

  std::optional<int> find_vertex(const std::string& id) const;
  std::optional<int> find_edge(const std::string& id) const;

  int origin(int dart) const { return dart % 2 == 0 ? from_[dart / 2] : to_[dart / 2]; }
  int terminus(int dart) const { return dart % 2 == 0 ? to_[dart / 2] : from_[dart / 2]; }
  static int involution(int dart) { return dart ^ 1; }
  static int pair_of(int dart) { return dart / 2; }
  // Representative dart of pair e: the lexicographically smaller id, which is
  // always the forward dart under the id scheme above.
  static int representative(int e) { return 2 * e; }

  bool is_loop(int e) const { return from_[e] == to_[e]; }

  // Number of darts terminating at v; a loop contributes 2.
  int degree(int v) const;
  // Darts y with t(y) = v, in dart order.
  std::vector<int> darts_into(int v) const;
  // Edge pairs incident to v (loops listed once).
  std::vector<int> edges_at(int v) const;

  // Partition of vertices into connected components, ordered by least vertex.
  std::vector<std::vector<int>> connected_components() const;

  void check_valid() const;

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<std::string> edge_ids_;
  std::vector<int> from_, to_;  // per edge pair
  std::unordered_map<std::string, int> vertex_index_;
  std::unordered_map<std::string, int> edge_index_;
};

// A relative 1-cycle, as the list of edge pairs traversed (with multiplicity;
// parity is what epsilon consumes) plus a representative dart walk.
struct RelativeCycle {
  std::vector<int> darts;       // walk; closed, or from one marked vertex to another
  std::vector<char> edge_vec;   // mod-2 characteristic vector over edge pairs
};

// Basis of H1(g, relative_to). Computed on the quotient graph with all
// relative_to vertices identified to one point (empty set: absolute H1).
std::vector<RelativeCycle> cycle_space_basis(const DartGraph& g,
                                             const std::vector<int>& relative_to);

}  // namespace plumbcalc
