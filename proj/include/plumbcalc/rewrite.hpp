#pragma once

#include <string>
#include <vector>

#include "plumbcalc/plumbing.hpp"

namespace plumbcalc {

enum class RewriteOp { R1_0_plus, R1_plus, R1_minus, R1_plus_plus, R2, FN1, FN2 };

std::string to_string(RewriteOp op);
RewriteOp rewrite_op_from_string(const std::string& s);

struct RewriteSite {
  RewriteOp op;
  std::string vertex;                 // primary matched vertex (center / carrier)
  std::vector<std::string> matched;   // all vertex ids consumed by the pattern
};

// Finds the site with the given op anchored at vertex id; nullopt if the
// pattern does not match there.
std::optional<RewriteSite> match_site(const DecoratedPlumbingGraph& g, RewriteOp op,
                                      const std::string& vertex);

// All sites in deterministic order: vertices by id, ops FN2, FN1, R1+0, R1+,
// R1++, R1-, R2 at each vertex.
std::vector<RewriteSite> find_sites(const DecoratedPlumbingGraph& g);

// Applies one rewrite; throws GraphError if the site no longer matches.
DecoratedPlumbingGraph apply_rewrite(const DecoratedPlumbingGraph& g, const RewriteSite& site);

struct NormalForm {
  DecoratedPlumbingGraph graph;
  std::vector<RewriteSite> trace;
};

// Reduces a boundary-bearing, all-(+), negative-definite decorated plumbing
// graph by the blow-downs and the two dangling-leaf operations until no site
// matches, then checks the normal-form postconditions.
NormalForm normalize_resolution(const DecoratedPlumbingGraph& g);

bool is_normal_form(const DecoratedPlumbingGraph& g);

// Inverse R1 operations, used by the confluence tests and the self-test
// command. blow_up_leaf attaches a fresh (-1) leaf to interior vertex v
// (inverse R1+0); blow_up_edge subdivides a (+) edge between interior
// vertices with a fresh (-1) vertex (inverse R1+).
DecoratedPlumbingGraph blow_up_leaf(const DecoratedPlumbingGraph& g, int v);
DecoratedPlumbingGraph blow_up_edge(const DecoratedPlumbingGraph& g, int edge);

// Label-preserving isomorphism (kind, genus, euler, sign, epsilon); the
// witness is the vertex map of the first isomorphism in search order.
std::optional<std::vector<int>> dpg_equivalence_witness(const DecoratedPlumbingGraph& a,
                                                        const DecoratedPlumbingGraph& b);
bool dpg_equivalent(const DecoratedPlumbingGraph& a, const DecoratedPlumbingGraph& b);

}  // namespace plumbcalc
