#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plumbcalc {

// Generic labeled multigraph view for isomorphism search. Edge labels are
// given per edge, keyed off the normalized endpoint pair; for directed label
// data the label must already encode the orientation relative to the
// normalized pair (lower index first).
struct LabeledGraphView {
  int n = 0;
  std::vector<std::string> vlabel;
  std::vector<std::pair<int, int>> edge_ends;  // normalized: first <= second
  std::vector<std::string> elabel;             // per edge, aligned with edge_ends
  // When the ends arrive unnormalized, label_fwd applies if from <= to and
  // label_rev otherwise; callers use add_edge to handle this.
  void add_edge(int from, int to, const std::string& label_fwd, const std::string& label_rev) {
    if (from <= to) {
      edge_ends.emplace_back(from, to);
      elabel.push_back(label_fwd);
    } else {
      edge_ends.emplace_back(to, from);
      elabel.push_back(label_rev);
    }
  }
};

struct IsoWitness {
  std::vector<int> vertex_map;  // A vertex -> B vertex
  std::vector<int> edge_map;    // A edge index -> B edge index
};

// Enumerates isomorphisms A -> B (vertex and edge bijections preserving all
// labels) in deterministic order; stops when visit returns true. Returns
// whether the search was stopped (i.e. an accepted witness exists).
bool enumerate_isomorphisms(const LabeledGraphView& a, const LabeledGraphView& b,
                            const std::function<bool(const IsoWitness&)>& visit);

// First isomorphism, optionally filtered by an acceptance predicate.
std::optional<IsoWitness> find_isomorphism(
    const LabeledGraphView& a, const LabeledGraphView& b,
    const std::function<bool(const IsoWitness&)>& accept = nullptr);

}  // namespace plumbcalc
