#pragma once

#include <vector>

#include "plumbcalc/plumbing.hpp"

namespace plumbcalc {

// Modified plumbing graph: closed all-(+) plumbing graph whose darts carry
// finite torus self-covering matrices [[c,0],[b,a]] with 0 <= b < a, c > 0.
struct ModifiedPlumbingGraph {
  DecoratedPlumbingGraph base;
  std::vector<Mat2> m;  // per dart

  const Mat2& m_of(int dart) const { return m[dart]; }
};

// Normalizes a covering matrix into the lower-triangular shape.
Mat2 normalize_covering(const Mat2& m);

// Throws GraphError on the first violated invariant: shape constraints and
// the lattice compatibility of m(y) with J*m(ybar).
void validate_mpg(const ModifiedPlumbingGraph& g, bool require_connected = true);

// R_y = m(y)^{-1} J m(ybar); integral with det -1 for valid graphs.
Mat2 gluing_matrix(const ModifiedPlumbingGraph& g, int dart);

}  // namespace plumbcalc
