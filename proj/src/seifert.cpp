#include "plumbcalc/seifert.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace plumbcalc {

using boost::multiprecision::gcd;

Convergents cf_convergents(const std::vector<Int>& b) {
  Int c_pp = 0, c_p = 1;   // c_{-1}, c_0
  Int d_pp = -1, d_p = 0;  // d_{-1}, d_0
  for (const Int& bi : b) {
    Int c = bi * c_p - c_pp;
    Int d = bi * d_p - d_pp;
    c_pp = c_p; c_p = c;
    d_pp = d_p; d_p = d;
  }
  Convergents out;
  out.c = c_p;
  out.d = d_p;
  out.c_prev = c_pp;
  out.d_prev = d_pp;
  out.B(0, 0) = out.d; out.B(0, 1) = out.c;
  out.B(1, 0) = -out.d_prev; out.B(1, 1) = -out.c_prev;
  if (out.B.det() != -1) throw GraphError("det B_k != -1");
  return out;
}

Rat cf_value(const std::vector<Int>& b) {
  Convergents cv = cf_convergents(b);
  if (cv.d == 0) throw GraphError("continued fraction has infinite value");
  return Rat(cv.c, cv.d);
}

void validate_seifert(const SeifertData& sd) {
  if (sd.boundary < 0) throw GraphError("negative boundary count");
  for (const auto& f : sd.fibers) {
    if (f.alpha < 2) throw GraphError("fiber alpha < 2");
    if (f.beta < 0 || f.beta >= f.alpha) throw GraphError("fiber beta out of range");
    if (gcd(f.alpha, f.beta) != 1) throw GraphError("fiber pair not coprime");
  }
}

Rat seifert_euler(const SeifertData& sd) {
  Rat e(sd.s);
  for (const auto& f : sd.fibers) e -= Rat(f.beta, f.alpha);
  return e;
}

SeifertData reverse_seifert(const SeifertData& sd) {
  SeifertData out;
  out.genus = sd.genus;
  out.boundary = sd.boundary;
  out.s = -sd.s + static_cast<long long>(sd.fibers.size());
  for (const auto& f : sd.fibers) out.fibers.push_back({f.alpha, f.alpha - f.beta});
  return out;
}

std::optional<int> star_center(const DecoratedPlumbingGraph& g) {
  auto chains = find_maximal_chains(g);
  for (const auto& c : chains)
    if (c.cyclic) return std::nullopt;
  std::vector<char> on_chain(g.graph.vertex_count(), 0);
  for (const auto& c : chains)
    for (int v : c.verts) on_chain[v] = 1;
  std::vector<int> candidates;
  for (int v = 0; v < g.graph.vertex_count(); ++v)
    if (g.is_interior(v) && !on_chain[v]) candidates.push_back(v);
  if (candidates.size() == 1) return candidates[0];
  if (candidates.empty()) {
    // Every interior vertex is chain-like (a path); take the first.
    auto ints = g.interior_vertices();
    if (!ints.empty()) return ints[0];
  }
  return std::nullopt;
}

SeifertData star_to_seifert(const DecoratedPlumbingGraph& g, int center) {
  validate_dpg(g);
  if (!g.is_interior(center)) throw GraphError("center must be interior");
  if (!g.all_plus()) throw GraphError("star graph must have all (+) edges");
  SeifertData sd;
  sd.genus = g.genus[center];
  sd.s = g.euler[center];
  std::vector<char> seen(g.graph.vertex_count(), 0);
  seen[center] = 1;
  for (int e : g.graph.edges_at(center)) {
    if (g.graph.is_loop(e)) throw GraphError("non-star input: loop at the center");
    int d = DartGraph::representative(e);
    int u = g.graph.origin(d) == center ? g.graph.terminus(d) : g.graph.origin(d);
    if (g.is_boundary(u)) {
      sd.boundary++;
      seen[u] = 1;
      continue;
    }
    // Walk the leg outward.
    std::vector<Int> string;
    int prev_edge = e, cur = u;
    while (true) {
      if (!g.is_interior(cur)) throw GraphError("non-star input: arrow on a leg");
      if (g.genus[cur] != 0) throw GraphError("non-star input: leg vertex with genus");
      if (g.euler[cur] > -2) throw GraphError("leg entry > -2");
      if (seen[cur]) throw GraphError("non-star input: legs meet");
      seen[cur] = 1;
      string.push_back(Int(-g.euler[cur]));
      auto edges = g.graph.edges_at(cur);
      if (edges.size() > 2) throw GraphError("non-star input: branching leg");
      int next_edge = -1;
      for (int e2 : edges)
        if (e2 != prev_edge) next_edge = e2;
      if (next_edge == -1) break;  // open end
      if (g.graph.is_loop(next_edge)) throw GraphError("non-star input: loop on a leg");
      int dd = DartGraph::representative(next_edge);
      cur = g.graph.origin(dd) == cur ? g.graph.terminus(dd) : g.graph.origin(dd);
      prev_edge = next_edge;
    }
    Rat val = cf_value(string);
    Int p = numerator(val), q = denominator(val);
    sd.fibers.push_back({p, p - q});
  }
  for (int v = 0; v < g.graph.vertex_count(); ++v)
    if (!seen[v]) throw GraphError("non-star input: vertex off the star: " + g.graph.vertex_id(v));
  validate_seifert(sd);
  return sd;
}

SignCheckReport definiteness_sign_check(const DecoratedPlumbingGraph& g) {
  SignCheckReport rep{definiteness(intersection_form(g)), std::nullopt, true};
  auto center = star_center(g);
  if (!center) throw GraphError("definiteness_sign_check requires a star-shaped graph");
  auto try_euler = [&](const DecoratedPlumbingGraph& s, int c) -> std::optional<Rat> {
    try {
      SeifertData sd = star_to_seifert(s, c);
      return seifert_euler(sd);
    } catch (const GraphError&) {
      return std::nullopt;
    }
  };
  rep.euler = try_euler(g, *center);
  if (!rep.euler) {
    DecoratedPlumbingGraph neg = g;
    for (auto& e : neg.euler) e = -e;
    if (auto v = try_euler(neg, *center)) rep.euler = -*v;
  }
  if (rep.euler) {
    if (rep.definiteness == Definiteness::NegativeDefinite && *rep.euler >= 0) rep.consistent = false;
    if (rep.definiteness == Definiteness::PositiveDefinite && *rep.euler <= 0) rep.consistent = false;
  }
  return rep;
}

}  // namespace plumbcalc
