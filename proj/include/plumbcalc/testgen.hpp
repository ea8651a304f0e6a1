#pragma once

#include <cstdint>
#include <random>

#include "plumbcalc/curves.hpp"
#include "plumbcalc/rewrite.hpp"

namespace plumbcalc {

// Random local resolution graphs (negative definite by construction) for the
// confluence harness and the self-test command.
SingularPointSpec random_point_spec(std::mt19937& rng);
DecoratedPlumbingGraph random_resolution_graph(std::mt19937& rng, int max_vertices = 10);

// Applies `count` random inverse-R1 blow-ups (leaf attachments and edge
// subdivisions at interior sites).
DecoratedPlumbingGraph random_blow_ups(const DecoratedPlumbingGraph& g, std::mt19937& rng,
                                       int count);

struct ConfluenceReport {
  int trials = 0;
  int failures = 0;
};

// normalize(blow_ups(g)) must agree with normalize(g) up to relabeling.
ConfluenceReport confluence_selftest(uint64_t seed, int trials);

}  // namespace plumbcalc
