#pragma once

#include <optional>
#include <vector>

#include "plumbcalc/plumbing.hpp"

namespace plumbcalc {

// Convergents of the descending continued fraction [b1,...,bk] =
// b1 - 1/(b2 - 1/(...)), with seeds c_{-1}=0, c_0=1, d_{-1}=-1, d_0=0 and
// recurrence x_i = b_i x_{i-1} - x_{i-2}. value = c_k / d_k.
struct Convergents {
  Int c, d;          // c_k, d_k
  Int c_prev, d_prev;  // c_{k-1}, d_{k-1}
  Mat2 B;            // [[d_k, c_k], [-d_{k-1}, -c_{k-1}]], det -1
};

Convergents cf_convergents(const std::vector<Int>& b);
inline Convergents cf_convergents(const std::vector<long long>& b) {
  std::vector<Int> bb(b.begin(), b.end());
  return cf_convergents(bb);
}

// Exact value of [b1,...,bk]; requires d_k != 0.
Rat cf_value(const std::vector<Int>& b);

struct SeifertFiber {
  Int alpha, beta;
};

struct SeifertData {
  long long genus = 0;
  long long boundary = 0;  // r
  Int s = 0;               // integer invariant; tuple is ((g,r); -s; fibers)
  std::vector<SeifertFiber> fibers;
};

void validate_seifert(const SeifertData& sd);

// e(M) = s - sum beta_i / alpha_i.
Rat seifert_euler(const SeifertData& sd);

// Data of the orientation-reversed manifold: ((g,r); -s+m; (alpha, alpha-beta)).
// Satisfies seifert_euler(reverse(sd)) == -seifert_euler(sd).
SeifertData reverse_seifert(const SeifertData& sd);

// Star-shaped decorated plumbing graph: one center (arrows allowed on the
// center only), dangling chain legs with euler weights <= -2. The Seifert
// data takes s = center weight and per leg alpha/(alpha-beta) = [-e_1,...],
// the string read from the center outward.
SeifertData star_to_seifert(const DecoratedPlumbingGraph& g, int center);

// Finds the center of a star graph (unique non-chain interior vertex, or the
// single interior vertex); nullopt if the graph is not star-shaped.
std::optional<int> star_center(const DecoratedPlumbingGraph& g);

struct SignCheckReport {
  Definiteness definiteness;
  std::optional<Rat> euler;  // e(M) when the star is orientable off a negated read
  bool consistent;           // definite => sign of e matches
};

SignCheckReport definiteness_sign_check(const DecoratedPlumbingGraph& g);

}  // namespace plumbcalc
