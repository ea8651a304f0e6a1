#include "plumbcalc/curves.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "plumbcalc/iso.hpp"

namespace plumbcalc {

std::vector<long long> multiplicity_sequence(long long p, long long q) {
  if (p < 1 || p >= q || std::gcd(p, q) != 1)
    throw GraphError("multiplicity_sequence requires 1 <= p < q coprime");
  if (p == 1) return {1};
  std::vector<long long> seq;
  long long a = q, b = p;
  while (b > 0) {
    long long k = a / b;
    for (long long i = 0; i < k; ++i) seq.push_back(b);
    long long r = a % b;
    a = b;
    b = r;
  }
  long long delta = 0;
  for (long long m : seq) delta += m * (m - 1) / 2;
  if (delta != (p - 1) * (q - 1) / 2)
    throw GraphError("multiplicity sequence fails the delta identity");
  return seq;
}

namespace {

struct BranchData {
  std::vector<long long> seq;
  std::string tangent;

  long long mult(size_t k) const { return k < seq.size() ? seq[k] : 1; }

  // prox(j) = {j+1, ..., j+t} with sum of mults equal to mult(j).
  // sat_next(k): the j < k with k+1 in prox(j), or -1.
  long long sat_next(size_t k) const {
    if (k == 0) return -1;
    for (size_t j = 0; j < k; ++j) {
      long long target = mult(j), sum = 0;
      size_t i = j;
      while (sum < target) sum += mult(++i);
      if (sum != target) continue;  // cannot happen for valid sequences
      if (k + 1 > j && k + 1 <= i && k + 1 >= j + 1) {
        if (j + 1 <= k) {
          if (static_cast<long long>(j) != static_cast<long long>(k))
            return static_cast<long long>(j);
        }
      }
    }
    return -1;
  }
};

BranchData branch_data(const BranchSpec& b) {
  BranchData d;
  d.tangent = b.tangent;
  if (b.kind == BranchSpec::Kind::Cusp) {
    if (b.p < 2 || b.p >= b.q || std::gcd(b.p, b.q) != 1)
      throw GraphError("cusp exponents must be coprime with 2 <= p < q");
    d.seq = multiplicity_sequence(b.p, b.q);
  } else {
    d.seq = {1};
  }
  return d;
}

long long branch_delta(const BranchSpec& b) {
  return b.kind == BranchSpec::Kind::Cusp ? (b.p - 1) * (b.q - 1) / 2 : 0;
}

}  // namespace

long long branch_intersection(const BranchSpec& a, const BranchSpec& b) {
  BranchData da = branch_data(a), db = branch_data(b);
  long long inter = da.mult(0) * db.mult(0);
  if (da.tangent != db.tangent) return inter;
  inter += da.mult(1) * db.mult(1);
  for (size_t k = 1;; ++k) {
    long long sa = da.sat_next(k), sb = db.sat_next(k);
    if (sa != sb || sa == -1) break;
    inter += da.mult(k + 1) * db.mult(k + 1);
  }
  return inter;
}

long long delta_invariant(const SingularPointSpec& pt) {
  long long d = 0;
  for (const auto& b : pt.branches) d += branch_delta(b);
  for (size_t i = 0; i < pt.branches.size(); ++i)
    for (size_t j = i + 1; j < pt.branches.size(); ++j)
      d += branch_intersection(pt.branches[i], pt.branches[j]);
  return d;
}

long long delta_invariant(const SingularPointSpec& pt, const std::string& component) {
  SingularPointSpec own;
  for (const auto& b : pt.branches)
    if (b.component == component) own.branches.push_back(b);
  return delta_invariant(own);
}

namespace {

// Blow-up simulation state.
struct Sim {
  struct Branch {
    int point;          // original singular point index
    int index;          // branch index within that point
    std::string component;
    BranchData data;
    size_t stage = 0;
    std::vector<int> exc_at_stage;  // exceptional created when stage k was blown
    int at = -1;                    // current sim point
  };
  struct Exc {
    std::string id;
    long long self = -1;
    std::string over;
  };
  struct Pt {
    std::string over;
    std::vector<int> excs;      // at most 2
    std::vector<int> branches;
    bool alive = true;
  };

  std::vector<Branch> branches;
  std::vector<Exc> excs;
  std::vector<Pt> pts;
  BlowUpHistory history;
  int center_counter = 0;

  // Direction key of a branch before blowing its current point.
  // kind 0: tangent label, 1: toward exceptional (id), 2: free (unique).
  struct Dir {
    int kind;
    std::string label;
    int exc = -1;
  };

  Dir direction(int bi) const {
    const Branch& b = branches[bi];
    if (b.stage == 0) return {0, b.data.tangent, -1};
    long long j = b.data.sat_next(b.stage);
    if (j >= 0) return {1, "", b.exc_at_stage[static_cast<size_t>(j)]};
    return {2, "f" + std::to_string(bi), -1};
  }

  bool active(int pi) const {
    const Pt& p = pts[pi];
    if (!p.alive || p.branches.empty()) return false;
    if (p.branches.size() >= 2) return true;
    int bi = p.branches[0];
    const Branch& b = branches[bi];
    if (b.data.mult(b.stage) >= 2) return true;
    if (p.excs.size() >= 2) return true;
    Dir d = direction(bi);
    if (d.kind == 1) return true;  // tangent to an exceptional through the point
    return false;
  }

  void blow_up(int pi) {
    // Copy the point's data: pushing new points below reallocates pts.
    const std::string over = pts[pi].over;
    const std::vector<int> old_excs = pts[pi].excs;
    const std::vector<int> moved = pts[pi].branches;

    BlowUpRecord rec;
    rec.point = over;
    rec.center = "c" + std::to_string(center_counter++);
    std::vector<std::pair<std::string, long long>> objs;
    for (int e : old_excs) objs.emplace_back(excs[e].id, 1);
    std::map<std::string, long long> comp_mult;
    for (int bi : moved)
      comp_mult[branches[bi].component] += branches[bi].data.mult(branches[bi].stage);
    for (const auto& [c, m] : comp_mult) objs.emplace_back(c, m);
    rec.objects = objs;

    int ne = static_cast<int>(excs.size());
    excs.push_back({"E" + std::to_string(ne + 1), -1, over});
    rec.exceptional = excs[ne].id;
    history.records.push_back(rec);

    // Old exceptionals drop and cross the new one.
    std::map<int, int> crossing;  // old exc -> new point index
    for (int e : old_excs) {
      excs[e].self -= 1;
      Pt np;
      np.over = over;
      np.excs = {e, ne};
      crossing[e] = static_cast<int>(pts.size());
      pts.push_back(np);
    }

    // Regroup branches.
    std::map<std::string, int> by_label;  // tangent/free label -> new point
    for (int bi : moved) {
      Branch& b = branches[bi];
      Dir d = direction(bi);
      int dest;
      if (d.kind == 1) {
        auto it = crossing.find(d.exc);
        if (it == crossing.end())
          throw GraphError("internal: satellite target not at the center");
        dest = it->second;
      } else {
        std::string key = (d.kind == 0 ? "t:" : "f:") + d.label;
        auto it = by_label.find(key);
        if (it == by_label.end()) {
          Pt np;
          np.over = over;
          np.excs = {ne};
          by_label[key] = static_cast<int>(pts.size());
          dest = static_cast<int>(pts.size());
          pts.push_back(np);
        } else {
          dest = it->second;
        }
      }
      b.exc_at_stage.push_back(ne);  // exc created blowing stage b.stage
      b.stage++;
      b.at = dest;
      pts[dest].branches.push_back(bi);
    }
    pts[pi].alive = false;
    pts[pi].branches.clear();
  }

  void run() {
    while (true) {
      int target = -1;
      for (size_t i = 0; i < pts.size(); ++i)
        if (active(static_cast<int>(i))) { target = static_cast<int>(i); break; }
      if (target < 0) break;
      blow_up(target);
    }
  }
};

Sim make_sim(const std::vector<SingularPointSpec>& points) {
  Sim sim;
  for (size_t pi = 0; pi < points.size(); ++pi) {
    Sim::Pt p;
    p.over = points[pi].id;
    int pt_index = static_cast<int>(sim.pts.size());
    for (size_t bi = 0; bi < points[pi].branches.size(); ++bi) {
      const BranchSpec& bs = points[pi].branches[bi];
      Sim::Branch b;
      b.point = static_cast<int>(pi);
      b.index = static_cast<int>(bi);
      b.component = bs.component;
      b.data = branch_data(bs);
      b.at = pt_index;
      p.branches.push_back(static_cast<int>(sim.branches.size()));
      sim.branches.push_back(std::move(b));
    }
    sim.pts.push_back(std::move(p));
  }
  return sim;
}

void validate_point_spec(const SingularPointSpec& pt) {
  if (pt.branches.empty()) throw GraphError("singular point with no branches: " + pt.id);
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& b : pt.branches) {
    if (b.kind == BranchSpec::Kind::Cusp &&
        (b.p < 2 || b.p >= b.q || std::gcd(b.p, b.q) != 1))
      throw GraphError("invalid cusp exponents at " + pt.id);
    if (!seen.insert({b.component, b.tangent}).second)
      throw GraphError("two branches of one component share a tangent at " + pt.id);
  }
}

}  // namespace

std::pair<DecoratedPlumbingGraph, BlowUpHistory> resolve_singularity(const SingularPointSpec& pt) {
  validate_point_spec(pt);
  Sim sim = make_sim({pt});
  sim.run();
  DpgBuilder b;
  std::vector<int> exc_idx;
  for (const auto& e : sim.excs) exc_idx.push_back(b.interior(e.id, e.self, 0));
  if (sim.excs.empty()) throw GraphError("point is smooth: nothing to resolve");
  std::vector<int> arrows;
  for (size_t i = 0; i < sim.branches.size(); ++i)
    arrows.push_back(b.boundary("a" + std::to_string(i + 1)));
  int xe = 0;
  for (const auto& p : sim.pts) {
    if (!p.alive) continue;
    if (p.excs.size() == 2 && p.branches.empty())
      b.edge("x" + std::to_string(xe++), exc_idx[p.excs[0]], exc_idx[p.excs[1]]);
  }
  for (size_t bi = 0; bi < sim.branches.size(); ++bi) {
    const auto& br = sim.branches[bi];
    const auto& p = sim.pts[br.at];
    if (p.excs.size() != 1)
      throw GraphError("internal: branch did not end transversally on one exceptional");
    b.edge("x" + std::to_string(xe++), exc_idx[p.excs[0]], arrows[bi]);
  }
  DecoratedPlumbingGraph out = b.build();
  validate_dpg(out);
  if (definiteness(intersection_form(out)) != Definiteness::NegativeDefinite)
    throw GraphError("internal: local form not negative definite");
  return {out, sim.history};
}

int MarkedCombinatorics::vertex_of(const std::string& id) const {
  auto v = graph.find_vertex(id);
  if (!v) throw GraphError("unknown vertex id: " + id);
  return *v;
}

DecoratedPlumbingGraph MarkedCombinatorics::as_dpg() const {
  DecoratedPlumbingGraph g;
  g.graph = graph;
  g.kind.assign(graph.vertex_count(), VertexKind::Interior);
  g.genus = genus;
  g.euler = euler;
  g.sign.assign(graph.edge_count(), +1);
  g.eps_weight.assign(graph.edge_count(), 0);
  return g;
}

MarkedCombinatorics build_combinatorics(const CurveSpec& spec, const BuildOptions& opt) {
  std::map<std::string, long long> degree;
  for (const auto& c : spec.components) {
    if (degree.count(c.id)) throw GraphError("duplicate component id: " + c.id);
    if (c.degree < 1) throw GraphError("component degree must be >= 1");
    degree[c.id] = c.degree;
  }
  std::set<std::string> point_ids;
  for (const auto& p : spec.points) {
    validate_point_spec(p);
    if (!point_ids.insert(p.id).second) throw GraphError("duplicate point id: " + p.id);
    for (const auto& b : p.branches)
      if (!degree.count(b.component))
        throw GraphError("branch references unknown component " + b.component);
  }

  Sim sim = make_sim(spec.points);
  sim.run();

  MarkedCombinatorics m;
  m.components = spec.components;
  m.points = spec.points;
  m.history = sim.history;

  std::map<std::string, long long> self, delta2;  // per component: sum m^2, sum m(m-1)
  for (const auto& rec : sim.history.records) {
    for (const auto& [id, mult] : rec.objects) {
      if (!degree.count(id)) continue;  // exceptional
      self[id] += mult * mult;
      delta2[id] += mult * (mult - 1);
    }
  }

  for (const auto& c : spec.components) {
    long long d = c.degree;
    long long e = d * d - self[c.id];
    long long g = (d - 1) * (d - 2) / 2 - delta2[c.id] / 2;
    if (g < 0) throw GraphError("negative computed genus for component " + c.id);
    m.graph.add_vertex(c.id);
    m.str.push_back(1);
    m.genus.push_back(g);
    m.euler.push_back(e);
    m.over.push_back("");
  }
  for (const auto& e : sim.excs) {
    m.graph.add_vertex(e.id);
    m.str.push_back(0);
    m.genus.push_back(0);
    m.euler.push_back(e.self);
    m.over.push_back(e.over);
  }

  int xe = 0;
  for (const auto& p : sim.pts) {
    if (!p.alive || p.excs.size() != 2 || !p.branches.empty()) continue;
    m.graph.add_edge("x" + std::to_string(xe++), m.vertex_of(sim.excs[p.excs[0]].id),
                     m.vertex_of(sim.excs[p.excs[1]].id));
  }
  for (const auto& br : sim.branches) {
    if (br.at < 0) throw GraphError("internal: branch without a location");
    const auto& p = sim.pts[br.at];
    if (p.excs.size() != 1 || p.branches.size() != 1)
      throw GraphError("internal: unresolved branch endpoint");
    m.graph.add_edge("x" + std::to_string(xe++), m.vertex_of(sim.excs[p.excs[0]].id),
                     m.vertex_of(br.component));
  }

  // Loop-free check.
  for (int e = 0; e < m.graph.edge_count(); ++e)
    if (m.graph.is_loop(e)) throw GraphError("internal: loop in the combinatorics");

  // Local negative definiteness per singular point.
  for (const auto& p : spec.points) {
    DecoratedPlumbingGraph local = local_graph_at(m, p.id);
    if (definiteness(intersection_form(local)) != Definiteness::NegativeDefinite)
      throw GraphError("local exceptional form not negative definite at " + p.id);
  }

  if (opt.check_bezout) {
    for (size_t i = 0; i < spec.components.size(); ++i) {
      for (size_t j = i + 1; j < spec.components.size(); ++j) {
        const std::string& a = spec.components[i].id;
        const std::string& b = spec.components[j].id;
        long long total = 0;
        for (const auto& rec : sim.history.records) {
          long long ma = 0, mb = 0;
          for (const auto& [id, mult] : rec.objects) {
            if (id == a) ma = mult;
            if (id == b) mb = mult;
          }
          total += ma * mb;
        }
        if (total != degree[a] * degree[b])
          throw GraphError("Bezout violation between " + a + " and " + b);
      }
    }
  }
  return m;
}

long long qt_gcd_s(const QTType& t) {
  auto g = [](const std::vector<long long>& p) {
    long long s = 0;
    for (long long e : p) s = std::gcd(s, e);
    return s;
  };
  return std::gcd(g(t.p1), std::gcd(g(t.p2), g(t.p3)));
}

long long zariski_tuple_size(const QTType& t) { return qt_gcd_s(t) / 2 + 1; }

CurveSpec quasi_triangular_spec(const QTType& t) {
  auto sum = [](const std::vector<long long>& p) {
    long long s = 0;
    for (long long e : p) {
      if (e < 1) throw GraphError("partition part < 1");
      s += e;
    }
    return s;
  };
  long long d = sum(t.p1);
  if (d <= 1 || sum(t.p2) != d || sum(t.p3) != d)
    throw GraphError("partitions must share a common sum d > 1");
  CurveSpec spec;
  spec.components.push_back({"C", 2 * d});
  spec.components.push_back({"L1", 1});
  spec.components.push_back({"L2", 1});
  spec.components.push_back({"L3", 1});
  const std::vector<long long>* parts[3] = {&t.p1, &t.p2, &t.p3};
  for (int i = 0; i < 3; ++i) {
    SingularPointSpec pt;
    pt.id = "P" + std::to_string(i + 1);
    for (size_t j = 0; j < parts[i]->size(); ++j) {
      long long e = (*parts[i])[j];
      BranchSpec b;
      b.component = "C";
      b.tangent = "t" + std::to_string(i + 1) + "_" + std::to_string(j);
      if (e == 1) {
        b.kind = BranchSpec::Kind::Smooth;
      } else {
        b.kind = BranchSpec::Kind::Cusp;
        b.p = e;
        b.q = e + 1;
      }
      pt.branches.push_back(b);
    }
    // The two lines through this point, transverse to everything.
    for (int k = 1; k <= 3; ++k) {
      if (k == i + 1) continue;
      BranchSpec b;
      b.kind = BranchSpec::Kind::Smooth;
      b.component = "L" + std::to_string(k);
      b.tangent = "l" + std::to_string(k);
      pt.branches.push_back(b);
    }
    spec.points.push_back(pt);
  }
  return spec;
}

MarkedCombinatorics build_quasi_triangular(const QTType& t) {
  CurveSpec spec = quasi_triangular_spec(t);
  MarkedCombinatorics m = build_combinatorics(spec);
  long long d = 0;
  for (long long e : t.p1) d += e;
  long long want = (d - 1) * (d - 2) / 2;
  if (m.genus[m.vertex_of("C")] != want)
    throw GraphError("quasi-triangular build: C-vertex genus mismatch");
  return m;
}

DecoratedPlumbingGraph local_graph_at(const MarkedCombinatorics& m, const std::string& point_id) {
  bool known = false;
  for (const auto& p : m.points)
    if (p.id == point_id) known = true;
  if (!known) throw GraphError("unknown singular point: " + point_id);
  DpgBuilder b;
  std::map<int, int> idx;
  for (int v = 0; v < m.graph.vertex_count(); ++v)
    if (m.over[v] == point_id) idx[v] = b.interior(m.graph.vertex_id(v), m.euler[v], m.genus[v]);
  if (idx.empty()) throw GraphError("point has no exceptional vertices: " + point_id);
  int arrows = 0;
  for (int e = 0; e < m.graph.edge_count(); ++e) {
    int d = DartGraph::representative(e);
    int u = m.graph.origin(d), v = m.graph.terminus(d);
    bool iu = idx.count(u), iv = idx.count(v);
    if (iu && iv) {
      b.edge(m.graph.edge_id(e), idx[u], idx[v]);
    } else if (iu || iv) {
      int arrow = b.boundary("a" + std::to_string(++arrows));
      b.edge(m.graph.edge_id(e), idx[iu ? u : v], arrow);
    }
  }
  DecoratedPlumbingGraph out = b.build();
  validate_dpg(out);
  return out;
}

std::optional<std::vector<int>> cmb_equivalent(const MarkedCombinatorics& a,
                                               const MarkedCombinatorics& b) {
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
  auto w = find_isomorphism(view(a), view(b));
  if (!w) return std::nullopt;
  return w->vertex_map;
}

}  // namespace plumbcalc
