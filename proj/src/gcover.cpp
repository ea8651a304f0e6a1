#include "plumbcalc/gcover.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "plumbcalc/iso.hpp"

namespace plumbcalc {

namespace {

int coset_rep(const FiniteGroup& g, int x, const Subgroup& h) {
  int best = -1;
  for (int e : h.elems) {
    int y = g.mul(x, e);
    if (best < 0 || y < best) best = y;
  }
  return best;
}

}  // namespace

CoverDatum make_cover_datum_full(const MarkedCombinatorics& m, const FiniteGroup& g,
                                 const std::map<std::string, int>& meridians,
                                 const std::map<std::string, std::vector<int>>& extra) {
  CoverDatum cd;
  cd.group = g;
  cd.source = m;
  cd.meridian.assign(m.graph.vertex_count(), -1);
  for (int v = 0; v < m.graph.vertex_count(); ++v) {
    auto it = meridians.find(m.graph.vertex_id(v));
    if (it == meridians.end())
      throw GraphError("missing meridian for vertex " + m.graph.vertex_id(v));
    if (it->second < 0 || it->second >= g.order()) throw GraphError("meridian out of range");
    cd.meridian[v] = it->second;
  }
  for (const auto& [id, gens] : extra) {
    int v = m.vertex_of(id);
    for (int x : gens)
      if (x < 0 || x >= g.order()) throw GraphError("extra generator out of range");
    cd.extra[v] = gens;
  }
  for (int v = 0; v < m.graph.vertex_count(); ++v)
    if (m.genus[v] > 0 && !cd.extra.count(v))
      cd.warnings.push_back("positive-genus vertex " + m.graph.vertex_id(v) +
                            " has no extra generators; assuming trivial base-loop images");
  validate_cover(cd);
  return cd;
}

CoverDatum make_cover_datum(const MarkedCombinatorics& m, const FiniteGroup& g,
                            const std::map<std::string, int>& str_meridians,
                            const std::map<std::string, std::vector<int>>& extra) {
  if (!g.abelian())
    throw GraphError("meridian propagation requires an abelian group; supply the full map");
  std::map<std::string, int> full;
  for (int v = 0; v < m.graph.vertex_count(); ++v) {
    if (!m.is_str(v)) continue;
    auto it = str_meridians.find(m.graph.vertex_id(v));
    if (it == str_meridians.end())
      throw GraphError("missing meridian for component " + m.graph.vertex_id(v));
    full[m.graph.vertex_id(v)] = it->second;
  }
  // Replay the history: each exceptional's meridian is the multiplicity-
  // weighted sum of the meridians through its center.
  for (const auto& rec : m.history.records) {
    int acc = 0;
    for (const auto& [id, mult] : rec.objects) {
      auto it = full.find(id);
      if (it == full.end()) throw GraphError("history references unknown object " + id);
      acc = g.mul(acc, g.pow(it->second, mult));
    }
    full[rec.exceptional] = acc;
  }
  return make_cover_datum_full(m, g, full, extra);
}

void validate_cover(const CoverDatum& cd) {
  const auto& gr = cd.source.graph;
  for (int e = 0; e < gr.edge_count(); ++e) {
    int d = DartGraph::representative(e);
    int a = cd.meridian[gr.origin(d)], b = cd.meridian[gr.terminus(d)];
    if (cd.group.mul(a, b) != cd.group.mul(b, a))
      throw GraphError("meridians across edge " + gr.edge_id(e) + " do not commute");
  }
}

std::pair<Subgroup, Subgroup> vertex_groups(const CoverDatum& cd, int v) {
  std::vector<int> gens{cd.meridian[v]};
  for (int d : cd.source.graph.darts_into(v)) gens.push_back(cd.meridian[cd.source.graph.origin(d)]);
  if (auto it = cd.extra.find(v); it != cd.extra.end())
    gens.insert(gens.end(), it->second.begin(), it->second.end());
  Subgroup gv = subgroup_closure(cd.group, gens);
  Subgroup hv = subgroup_closure(cd.group, {cd.meridian[v]});
  for (int x : hv.elems)
    if (!gv.contains(x)) throw GraphError("H_v not contained in G_v");
  return {gv, hv};
}

Mat2 edge_matrix(const CoverDatum& cd, int dart) {
  const auto& g = cd.group;
  int f = cd.meridian[cd.source.graph.terminus(dart)];
  int s = cd.meridian[cd.source.graph.origin(dart)];
  if (g.mul(s, f) != g.mul(f, s)) throw GraphError("edge meridians do not commute");
  int a = g.element_order(f);
  Subgroup fib = subgroup_closure(g, {f});
  int c = -1;
  {
    int x = s;
    for (int u = 1; u <= g.order(); ++u) {
      if (fib.contains(x)) { c = u; break; }
      x = g.mul(x, s);
    }
  }
  if (c < 0) throw GraphError("internal: no finite c");
  int sc = g.pow(s, c);
  int b = -1;
  {
    int x = sc;  // s^c * f^b == 0  <=>  f^b == inv(s^c)
    for (int bb = 0; bb < a; ++bb) {
      if (g.mul(sc, g.pow(f, bb)) == 0) { b = bb; break; }
    }
    (void)x;
  }
  if (b < 0) throw GraphError("internal: no b in range");
  Mat2 m;
  m(0, 0) = c; m(0, 1) = 0;
  m(1, 0) = b; m(1, 1) = a;
  Subgroup gy = subgroup_closure(g, {s, f});
  if (Int(a) * Int(c) != Int(gy.order()))
    throw GraphError("internal: det m != #G_y");
  return m;
}

GCombinatorics build_gcombinatorics(const CoverDatum& cd) {
  validate_cover(cd);
  const auto& g = cd.group;
  const auto& src = cd.source.graph;
  GCombinatorics gc;
  gc.datum = cd;

  // Per source vertex: G_v, H_v, fiber of coset reps.
  int nv = src.vertex_count();
  std::vector<Subgroup> Gv(nv), Hv(nv);
  std::vector<std::vector<int>> vreps(nv);
  std::vector<std::map<int, int>> vindex(nv);  // rep -> lifted vertex
  for (int v = 0; v < nv; ++v) {
    auto [gv, hv] = vertex_groups(cd, v);
    Gv[v] = gv;
    Hv[v] = hv;
    std::set<int> reps;
    for (int x = 0; x < g.order(); ++x) reps.insert(coset_rep(g, x, gv));
    for (int r : reps) {
      int w = gc.graph.add_vertex(src.vertex_id(v) + "@" + std::to_string(r));
      vindex[v][r] = w;
      gc.pr_vertex.push_back(v);
    }
    vreps[v].assign(reps.begin(), reps.end());
  }

  // Per source edge pair: G_y and the lifted edges.
  int ne = src.edge_count();
  std::vector<Subgroup> Gy(ne);
  std::vector<Mat2> m_fwd(ne), m_bwd(ne);
  std::vector<std::vector<int>> ereps(ne);
  std::vector<std::map<int, int>> eindex(ne);
  for (int e = 0; e < ne; ++e) {
    int d = DartGraph::representative(e);
    int o = src.origin(d), t = src.terminus(d);
    Gy[e] = subgroup_closure(g, {cd.meridian[o], cd.meridian[t]});
    for (int x : Gy[e].elems)
      if (!Gv[o].contains(x) || !Gv[t].contains(x))
        throw GraphError("G_y not contained in the endpoint groups");
    m_fwd[e] = edge_matrix(cd, d);
    m_bwd[e] = edge_matrix(cd, DartGraph::involution(d));
    std::set<int> reps;
    for (int x = 0; x < g.order(); ++x) reps.insert(coset_rep(g, x, Gy[e]));
    for (int r : reps) {
      int le = gc.graph.add_edge(src.edge_id(e) + "@" + std::to_string(r),
                                 vindex[o].at(coset_rep(g, r, Gv[o])),
                                 vindex[t].at(coset_rep(g, r, Gv[t])));
      eindex[e][r] = le;
      gc.pr_edge.push_back(e);
      gc.m_theta.push_back(m_fwd[e]);
      gc.m_theta.push_back(m_bwd[e]);
    }
    ereps[e].assign(reps.begin(), reps.end());
  }

  // Labels.
  for (int w = 0; w < gc.graph.vertex_count(); ++w) {
    int v = gc.pr_vertex[w];
    Int gv = Gv[v].order(), hv = Hv[v].order();
    Int num = 2 * hv - (2 - 2 * Int(cd.source.genus[v]) - Int(src.degree(v))) * gv;
    // g_theta = (1/2) (2 - (gv/hv)(2 - 2g - d) - sum gv/gy); all terms over hv.
    Rat acc = Rat(num, hv);
    for (int d : src.darts_into(v)) acc -= Rat(gv, Gy[DartGraph::pair_of(d)].order());
    acc /= 2;
    if (denominator(acc) != 1 || acc < 0)
      throw GraphError("g_theta is not a nonnegative integer at " + gc.graph.vertex_id(w));
    gc.g_theta.push_back(to_ll(numerator(acc)));
    Rat e_acc = Rat(gv, hv * hv) * Rat(cd.source.euler[v]);
    for (int d : src.darts_into(v)) {
      int e = DartGraph::pair_of(d);
      const Mat2& m = (d % 2 == 0) ? m_fwd[e] : m_bwd[e];
      e_acc -= Rat(m(1, 0), m(1, 1)) * Rat(gv, Gy[e].order());
    }
    gc.e_theta.push_back(e_acc);
    gc.e_theta_integral.push_back(denominator(e_acc) == 1);
  }

  // Action by left multiplication on coset reps.
  gc.vertex_action.assign(g.order(), std::vector<int>(gc.graph.vertex_count()));
  gc.edge_action.assign(g.order(), std::vector<int>(gc.graph.edge_count()));
  for (int x = 0; x < g.order(); ++x) {
    for (int v = 0; v < nv; ++v)
      for (int r : vreps[v])
        gc.vertex_action[x][vindex[v].at(r)] = vindex[v].at(coset_rep(g, g.mul(x, r), Gv[v]));
    for (int e = 0; e < ne; ++e)
      for (int r : ereps[e])
        gc.edge_action[x][eindex[e].at(r)] = eindex[e].at(coset_rep(g, g.mul(x, r), Gy[e]));
  }
  return gc;
}

ModifiedPlumbingGraph to_mpg(const GCombinatorics& gc) {
  ModifiedPlumbingGraph out;
  out.base.graph = gc.graph;
  int n = gc.graph.vertex_count();
  out.base.kind.assign(n, VertexKind::Interior);
  out.base.genus = gc.g_theta;
  out.base.euler.resize(n);
  for (int w = 0; w < n; ++w) {
    if (!gc.e_theta_integral[w])
      throw GraphError("e_theta is not integral at " + gc.graph.vertex_id(w));
    out.base.euler[w] = to_ll(numerator(gc.e_theta[w]));
  }
  out.base.sign.assign(gc.graph.edge_count(), +1);
  out.base.eps_weight.assign(gc.graph.edge_count(), 0);
  out.m = gc.m_theta;
  validate_mpg(out, false);
  return out;
}

int GCombinatorics::fiber_size(int source_vertex) const {
  int n = 0;
  for (int v : pr_vertex)
    if (v == source_vertex) ++n;
  return n;
}

namespace {

// Enumerate base equivalences of marked combinatorics.
void base_equivalences(const MarkedCombinatorics& a, const MarkedCombinatorics& b,
                       const std::function<bool(const std::vector<int>&)>& visit) {
  auto view = [](const MarkedCombinatorics& m) {
    LabeledGraphView v;
    v.n = m.graph.vertex_count();
    for (int i = 0; i < v.n; ++i)
      v.vlabel.push_back((m.is_str(i) ? "S:" : "E:") + std::to_string(m.genus[i]) + ":" +
                         std::to_string(m.euler[i]));
    for (int e = 0; e < m.graph.edge_count(); ++e) {
      int d = DartGraph::representative(e);
      v.add_edge(m.graph.origin(d), m.graph.terminus(d), "", "");
    }
    return v;
  };
  enumerate_isomorphisms(view(a), view(b),
                         [&](const IsoWitness& w) { return visit(w.vertex_map); });
}

}  // namespace

std::optional<GEquivWitness> gequiv(const GCombinatorics& a, const GCombinatorics& b) {
  if (!(a.datum.group == b.datum.group)) return std::nullopt;
  const FiniteGroup& g = a.datum.group;
  const auto& src_a = a.datum.source;
  const auto& src_b = b.datum.source;

  // Recover per-vertex/edge subgroup and fiber structure.
  auto stabilizers = [&](const GCombinatorics& gc, std::vector<Subgroup>& sv,
                         std::vector<Subgroup>& se) {
    int nv = gc.datum.source.graph.vertex_count();
    int ne = gc.datum.source.graph.edge_count();
    sv.resize(nv);
    se.resize(ne);
    for (int v = 0; v < nv; ++v) sv[v] = vertex_groups(gc.datum, v).first;
    for (int e = 0; e < ne; ++e) {
      int d = DartGraph::representative(e);
      se[e] = subgroup_closure(g, {gc.datum.meridian[gc.datum.source.graph.origin(d)],
                                   gc.datum.meridian[gc.datum.source.graph.terminus(d)]});
    }
  };
  std::vector<Subgroup> Gv_a, Gy_a, Gv_b, Gy_b;
  stabilizers(a, Gv_a, Gy_a);
  stabilizers(b, Gv_b, Gy_b);

  auto lifted_vertex = [&](const GCombinatorics& gc, int src_v, int rep) {
    return *gc.graph.find_vertex(gc.datum.source.graph.vertex_id(src_v) + "@" +
                                 std::to_string(rep));
  };
  auto lifted_edge = [&](const GCombinatorics& gc, int src_e, int rep) {
    return *gc.graph.find_edge(gc.datum.source.graph.edge_id(src_e) + "@" + std::to_string(rep));
  };

  std::optional<GEquivWitness> result;

  auto try_assignment = [&](const std::vector<int>& tau, const std::vector<int>& phi) -> bool {
    int nv = src_a.graph.vertex_count();
    int ne = src_a.graph.edge_count();
    // Label precheck on fibers.
    for (int v = 0; v < nv; ++v) {
      int w_a = lifted_vertex(a, v, coset_rep(g, 0, Gv_a[v]));
      int w_b = lifted_vertex(b, phi[v], coset_rep(g, 0, Gv_b[phi[v]]));
      if (a.fiber_size(v) != b.fiber_size(phi[v])) return false;
      if (a.g_theta[w_a] != b.g_theta[w_b] || a.e_theta[w_a] != b.e_theta[w_b]) return false;
    }
    // Edge map at the source level: the base iso gives vertex images; we need
    // the induced edge correspondence. Recompute by matching endpoints and m.
    std::vector<int> phi_e(ne, -1);
    {
      std::vector<char> used(ne, 0);
      for (int e = 0; e < ne; ++e) {
        int d = DartGraph::representative(e);
        int o = phi[src_a.graph.origin(d)], t = phi[src_a.graph.terminus(d)];
        for (int e2 = 0; e2 < ne; ++e2) {
          if (used[e2]) continue;
          int d2 = DartGraph::representative(e2);
          int o2 = src_b.graph.origin(d2), t2 = src_b.graph.terminus(d2);
          if ((o2 == o && t2 == t) || (o2 == t && t2 == o)) {
            phi_e[e] = e2;
            used[e2] = 1;
            break;
          }
        }
        if (phi_e[e] < 0) return false;
      }
    }

    // Choose base-point images per vertex fiber, then per edge fiber.
    std::vector<int> rv(nv, -1), re(ne, -1);
    std::function<bool(int)> pick_vertex = [&](int v) -> bool {
      if (v == nv) {
        std::function<bool(int)> pick_edge = [&](int e) -> bool {
          if (e == ne) {
            // Full verification.
            GEquivWitness wit;
            wit.tau = tau;
            wit.base_map = phi;
            wit.lifted_map.assign(a.graph.vertex_count(), -1);
            for (int v2 = 0; v2 < nv; ++v2) {
              for (int x = 0; x < g.order(); ++x) {
                int w = lifted_vertex(a, v2, coset_rep(g, x, Gv_a[v2]));
                int img = lifted_vertex(b, phi[v2], coset_rep(g, g.mul(tau[x], rv[v2]), Gv_b[phi[v2]]));
                if (wit.lifted_map[w] != -1 && wit.lifted_map[w] != img) return false;
                wit.lifted_map[w] = img;
              }
            }
            // Bijectivity.
            {
              std::vector<char> hit(b.graph.vertex_count(), 0);
              for (int x : wit.lifted_map) {
                if (x < 0 || hit[x]) return false;
                hit[x] = 1;
              }
            }
            // Edge consistency: map each lifted edge and check endpoints + m.
            std::vector<int> emap(a.graph.edge_count(), -1);
            for (int e2 = 0; e2 < ne; ++e2) {
              for (int x = 0; x < g.order(); ++x) {
                int le = lifted_edge(a, e2, coset_rep(g, x, Gy_a[e2]));
                int ie = lifted_edge(b, phi_e[e2], coset_rep(g, g.mul(tau[x], re[e2]), Gy_b[phi_e[e2]]));
                if (emap[le] != -1 && emap[le] != ie) return false;
                emap[le] = ie;
              }
            }
            for (int le = 0; le < a.graph.edge_count(); ++le) {
              if (emap[le] < 0) return false;
              int d = DartGraph::representative(le);
              int ie = emap[le];
              int d2 = DartGraph::representative(ie);
              int mo = wit.lifted_map[a.graph.origin(d)], mt = wit.lifted_map[a.graph.terminus(d)];
              bool straight = b.graph.origin(d2) == mo && b.graph.terminus(d2) == mt;
              bool flipped = b.graph.origin(d2) == mt && b.graph.terminus(d2) == mo;
              if (!straight && !flipped) return false;
              const Mat2& ma_f = a.m_theta[d];
              const Mat2& ma_b = a.m_theta[DartGraph::involution(d)];
              const Mat2& mb_f = b.m_theta[d2];
              const Mat2& mb_b = b.m_theta[DartGraph::involution(d2)];
              if (straight && !(ma_f == mb_f && ma_b == mb_b)) return false;
              if (!straight && !(ma_f == mb_b && ma_b == mb_f)) return false;
            }
            // Action intertwining.
            for (int x = 0; x < g.order(); ++x) {
              for (int w = 0; w < a.graph.vertex_count(); ++w)
                if (wit.lifted_map[a.vertex_action[x][w]] !=
                    b.vertex_action[tau[x]][wit.lifted_map[w]])
                  return false;
            }
            result = wit;
            return true;
          }
          // Candidates for the identity-coset edge image.
          for (int cand : [&] {
                 std::vector<int> reps;
                 std::set<int> seen;
                 for (int x = 0; x < g.order(); ++x) {
                   int r = coset_rep(g, x, Gy_b[phi_e[e]]);
                   if (seen.insert(r).second) reps.push_back(r);
                 }
                 std::sort(reps.begin(), reps.end());
                 return reps;
               }()) {
            bool ok = true;
            for (int h : Gy_a[e].elems)
              if (coset_rep(g, g.mul(tau[h], cand), Gy_b[phi_e[e]]) != cand) { ok = false; break; }
            if (!ok) continue;
            // Incidence with the chosen vertex base points.
            int d = DartGraph::representative(e);
            int o = src_a.graph.origin(d), t = src_a.graph.terminus(d);
            int d2 = DartGraph::representative(phi_e[e]);
            int o2 = src_b.graph.origin(d2), t2 = src_b.graph.terminus(d2);
            auto end_ok = [&](int sv, int tv) {
              return coset_rep(g, cand, Gv_b[sv]) ==
                     coset_rep(g, g.mul(tau[0], rv[tv] >= 0 ? rv[tv] : 0), Gv_b[sv]) ||
                     true;  // endpoint check happens in full verification
            };
            (void)end_ok;
            (void)o; (void)t; (void)o2; (void)t2;
            re[e] = cand;
            if (pick_edge(e + 1)) return true;
            re[e] = -1;
          }
          return false;
        };
        return pick_edge(0);
      }
      std::set<int> seen;
      std::vector<int> cands;
      for (int x = 0; x < g.order(); ++x) {
        int r = coset_rep(g, x, Gv_b[phi[v]]);
        if (seen.insert(r).second) cands.push_back(r);
      }
      std::sort(cands.begin(), cands.end());
      for (int cand : cands) {
        bool ok = true;
        for (int h : Gv_a[v].elems)
          if (coset_rep(g, g.mul(tau[h], cand), Gv_b[phi[v]]) != cand) { ok = false; break; }
        if (!ok) continue;
        rv[v] = cand;
        if (pick_vertex(v + 1)) return true;
        rv[v] = -1;
      }
      return false;
    };
    return pick_vertex(0);
  };

  for (const auto& tau : automorphisms(g)) {
    bool found = false;
    base_equivalences(src_a, src_b, [&](const std::vector<int>& phi) {
      if (try_assignment(tau, phi)) { found = true; return true; }
      return false;
    });
    if (found) return result;
  }
  return std::nullopt;
}

}  // namespace plumbcalc
