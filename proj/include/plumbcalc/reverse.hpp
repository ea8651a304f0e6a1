#pragma once

#include <vector>

#include "plumbcalc/plumbing.hpp"

namespace plumbcalc {

// Dual of a chain weight string (entries >= 2): decompose as
// n0*2, m1+3, n1*2, ..., ms+3, ns*2 and return (n0+1) when s = 0, else
// (n0+2, m1*2, n1+3, ..., ms*2, ns+2). Involutive; if [b] = p/q then the dual
// evaluates to p/(p-q).
std::vector<long long> chain_dual(const std::vector<long long>& b);

// F-normal form of the orientation-reversed plumbed manifold. Boundary
// vertices persist; non-chain interior vertices get e' = -e - c(v) with c(v)
// the number of adjoining maximal chains of length > 0 (counted twice when
// both ends adjoin v); chains of length >= 1 are replaced by their negated
// duals; length-0 chains flip sign; the epsilon class gains the parity of
// maximal chains met by each cycle. Components of the shape
// arrow--(e)--arrow reverse to arrow--(-e)--arrow.
DecoratedPlumbingGraph reverse_orientation(const DecoratedPlumbingGraph& g);

}  // namespace plumbcalc
