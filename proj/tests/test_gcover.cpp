#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "plumbcalc/gcover.hpp"

using namespace plumbcalc;

namespace {

// v (exceptional-style interior) joined to two components b1, b2.
MarkedCombinatorics tripod(long long euler_v) {
  MarkedCombinatorics m;
  m.graph.add_vertex("v");
  m.str.push_back(0);
  m.genus.push_back(0);
  m.euler.push_back(euler_v);
  m.over.push_back("P");
  for (int i = 1; i <= 2; ++i) {
    m.graph.add_vertex("b" + std::to_string(i));
    m.str.push_back(1);
    m.genus.push_back(0);
    m.euler.push_back(1);
    m.over.push_back("");
    m.components.push_back({"b" + std::to_string(i), 1});
  }
  m.graph.add_edge("e1", m.vertex_of("v"), m.vertex_of("b1"));
  m.graph.add_edge("e2", m.vertex_of("v"), m.vertex_of("b2"));
  return m;
}

MarkedCombinatorics conic() {
  CurveSpec spec;
  spec.components.push_back({"C", 2});
  return build_combinatorics(spec);
}

}  // namespace

TEST_CASE("subgroup_closure") {
  auto z6 = FiniteGroup::cyclic(6);
  CHECK(subgroup_closure(z6, {}).elems == std::vector<int>{0});
  CHECK(subgroup_closure(z6, {2}).elems == std::vector<int>{0, 2, 4});
  auto s3 = FiniteGroup::symmetric3();
  CHECK_FALSE(s3.abelian());
  CHECK(subgroup_closure(s3, {3, 1}).order() == 6);  // transposition + 3-cycle
}

TEST_CASE("group constructors and validation") {
  CHECK(FiniteGroup::cyclic(1).order() == 1);
  CHECK(FiniteGroup::from_invariant_factors({2, 2}).order() == 4);
  CHECK(FiniteGroup::cyclic(6).element_order(2) == 3);
  CHECK(FiniteGroup::cyclic(6).pow(5, 3) == 3);
  std::vector<std::vector<int>> bad{{0, 1}, {1, 1}};
  CHECK_THROWS_AS(FiniteGroup{bad}, GraphError);
}

TEST_CASE("propagate_meridians") {
  SUBCASE("node exceptional gets the sum") {
    MarkedCombinatorics m = tripod(-1);
    m.points.push_back({"P",
                        {{BranchSpec::Kind::Smooth, 1, 2, "t1", "b1"},
                         {BranchSpec::Kind::Smooth, 1, 2, "t2", "b2"}}});
    m.history.records.push_back({"P", "c0", {{"b1", 1}, {"b2", 1}}, "v"});
    auto z4 = FiniteGroup::cyclic(4);
    auto cd = make_cover_datum(m, z4, {{"b1", 1}, {"b2", 2}});
    CHECK(cd.meridian[m.vertex_of("v")] == 3);
  }
  SUBCASE("(2,3) cusp over Z/6") {
    SingularPointSpec pt;
    pt.id = "P";
    pt.branches.push_back({BranchSpec::Kind::Cusp, 2, 3, "t", "C"});
    CurveSpec spec;
    spec.components.push_back({"C", 6});
    spec.points.push_back(pt);
    BuildOptions opt;
    opt.check_bezout = false;
    auto m = build_combinatorics(spec, opt);
    auto cd = make_cover_datum(m, FiniteGroup::cyclic(6), {{"C", 1}});
    CHECK(cd.meridian[m.vertex_of("E1")] == 2);
    CHECK(cd.meridian[m.vertex_of("E2")] == 3);
    CHECK(cd.meridian[m.vertex_of("E3")] == 0);
  }
  SUBCASE("trivial group maps everything to the identity") {
    auto m = conic();
    auto cd = make_cover_datum(m, FiniteGroup::cyclic(1), {{"C", 0}});
    CHECK(cd.meridian[0] == 0);
  }
  SUBCASE("nonabelian propagation is refused") {
    auto m = conic();
    CHECK_THROWS_AS(make_cover_datum(m, FiniteGroup::symmetric3(), {{"C", 1}}), GraphError);
  }
}

TEST_CASE("vertex_groups") {
  MarkedCombinatorics m = tripod(-2);
  auto z2 = FiniteGroup::cyclic(2);
  SUBCASE("meridian generates H and G") {
    auto cd = make_cover_datum_full(m, z2, {{"v", 1}, {"b1", 0}, {"b2", 0}});
    auto [gv, hv] = vertex_groups(cd, m.vertex_of("v"));
    CHECK(gv.order() == 2);
    CHECK(hv.order() == 2);
  }
  SUBCASE("neighbors enlarge G") {
    auto cd = make_cover_datum_full(m, z2, {{"v", 0}, {"b1", 1}, {"b2", 1}});
    auto [gv, hv] = vertex_groups(cd, m.vertex_of("v"));
    CHECK(gv.order() == 2);
    CHECK(hv.order() == 1);
  }
}

TEST_CASE("edge_matrix") {
  MarkedCombinatorics m = tripod(-2);
  auto z2 = FiniteGroup::cyclic(2);
  SUBCASE("trivial group gives the identity") {
    auto cd = make_cover_datum_full(m, FiniteGroup::cyclic(1), {{"v", 0}, {"b1", 0}, {"b2", 0}});
    CHECK(edge_matrix(cd, 0) == Mat2::identity());
  }
  SUBCASE("both meridians 1 in Z/2") {
    auto cd = make_cover_datum_full(m, z2, {{"v", 1}, {"b1", 1}, {"b2", 1}});
    // dart 0 on edge e1: o = v, t = b1: s = 1, f = 1.
    Mat2 e = edge_matrix(cd, 0);
    Mat2 want{{Int(1), Int(0), Int(1), Int(2)}};
    CHECK(e == want);
  }
  SUBCASE("s = 0, f = 1") {
    auto cd = make_cover_datum_full(m, z2, {{"v", 0}, {"b1", 1}, {"b2", 1}});
    Mat2 e = edge_matrix(cd, 0);
    Mat2 want{{Int(1), Int(0), Int(0), Int(2)}};
    CHECK(e == want);
  }
}

TEST_CASE("build_gcombinatorics") {
  SUBCASE("trivial cover reproduces the source") {
    auto m = conic();
    auto cd = make_cover_datum(m, FiniteGroup::cyclic(1), {{"C", 0}});
    auto gc = build_gcombinatorics(cd);
    CHECK(gc.graph.vertex_count() == 1);
    CHECK(gc.g_theta[0] == m.genus[0]);
    CHECK(gc.e_theta[0] == Rat(m.euler[0]));
    CHECK(gc.m_theta.empty());
  }
  SUBCASE("worked Z/2 example: one lift with (g, e) = (0, -2)") {
    MarkedCombinatorics m = tripod(-2);
    auto cd = make_cover_datum_full(m, FiniteGroup::cyclic(2), {{"v", 1}, {"b1", 1}, {"b2", 1}});
    auto gc = build_gcombinatorics(cd);
    int v = m.vertex_of("v");
    CHECK(gc.fiber_size(v) == 1);
    for (int w = 0; w < gc.graph.vertex_count(); ++w) {
      if (gc.pr_vertex[w] != v) continue;
      CHECK(gc.g_theta[w] == 0);
      CHECK(gc.e_theta[w] == Rat(-2));
      CHECK(gc.e_theta_integral[w]);
    }
  }
  SUBCASE("lone Str vertex: g = 0, e = 2") {
    auto m = conic();
    auto cd = make_cover_datum(m, FiniteGroup::cyclic(2), {{"C", 1}});
    auto gc = build_gcombinatorics(cd);
    REQUIRE(gc.graph.vertex_count() == 1);
    CHECK(gc.g_theta[0] == 0);
    CHECK(gc.e_theta[0] == Rat(2));
  }
  SUBCASE("orbit, index, and determinant laws") {
    MarkedCombinatorics m = tripod(-2);
    std::vector<CoverDatum> data;
    data.push_back(make_cover_datum_full(m, FiniteGroup::cyclic(4), {{"v", 2}, {"b1", 1}, {"b2", 3}}));
    // Disconnected double cover: every fiber has two lifts.
    data.push_back(make_cover_datum_full(m, FiniteGroup::cyclic(2), {{"v", 0}, {"b1", 0}, {"b2", 0}}));
    for (const auto& cd : data) {
    auto gc = build_gcombinatorics(cd);
    const auto& g = gc.datum.group;
    for (int v = 0; v < m.graph.vertex_count(); ++v) {
      auto [gv, hv] = vertex_groups(cd, v);
      CHECK(gc.fiber_size(v) == g.order() / gv.order());
      // Transitivity on the fiber.
      std::set<int> orbit;
      for (int w = 0; w < gc.graph.vertex_count(); ++w)
        if (gc.pr_vertex[w] == v)
          for (int x = 0; x < g.order(); ++x) orbit.insert(gc.vertex_action[x][w]);
      CHECK(static_cast<int>(orbit.size()) == gc.fiber_size(v));
    }
    for (int e = 0; e < gc.graph.edge_count(); ++e) {
      int d = DartGraph::representative(e);
      int se = gc.pr_edge[e];
      int sd = DartGraph::representative(se);
      Subgroup gy = subgroup_closure(g, {cd.meridian[m.graph.origin(sd)],
                                         cd.meridian[m.graph.terminus(sd)]});
      CHECK(gc.m_theta[d].det() == Int(gy.order()));
    }
    // The action commutes with pr and preserves labels.
    for (int x = 0; x < g.order(); ++x)
      for (int w = 0; w < gc.graph.vertex_count(); ++w) {
        CHECK(gc.pr_vertex[gc.vertex_action[x][w]] == gc.pr_vertex[w]);
        CHECK(gc.g_theta[gc.vertex_action[x][w]] == gc.g_theta[w]);
        CHECK(gc.e_theta[gc.vertex_action[x][w]] == gc.e_theta[w]);
      }
    }
  }
  SUBCASE("positive-genus vertices get a warning without extra generators") {
    CurveSpec spec;
    spec.components.push_back({"C", 4});  // smooth quartic: genus 3
    auto m = build_combinatorics(spec);
    auto cd = make_cover_datum(m, FiniteGroup::cyclic(2), {{"C", 1}});
    CHECK_FALSE(cd.warnings.empty());
  }
}

TEST_CASE("automorphisms") {
  CHECK(automorphisms(FiniteGroup::cyclic(2)).size() == 1);
  CHECK(automorphisms(FiniteGroup::cyclic(3)).size() == 2);
  CHECK(automorphisms(FiniteGroup::from_invariant_factors({2, 2})).size() == 6);
  CHECK(automorphisms(FiniteGroup::symmetric3()).size() == 6);
}

TEST_CASE("gequiv") {
  MarkedCombinatorics m = tripod(-2);
  auto z3 = FiniteGroup::cyclic(3);
  SUBCASE("identity witness on itself") {
    auto cd = make_cover_datum_full(m, z3, {{"v", 2}, {"b1", 1}, {"b2", 1}});
    auto gc = build_gcombinatorics(cd);
    auto w = gequiv(gc, gc);
    REQUIRE(w.has_value());
    CHECK(w->tau == std::vector<int>{0, 1, 2});
    for (size_t i = 0; i < w->base_map.size(); ++i) CHECK(w->base_map[i] == static_cast<int>(i));
  }
  SUBCASE("group relabeled by inversion") {
    // For abelian data every derived structure (subgroups, kernels, cosets)
    // is inversion-invariant, so the identity automorphism already
    // intertwines; the search must find a witness among the two
    // automorphisms either way.
    auto cd1 = make_cover_datum_full(m, z3, {{"v", 2}, {"b1", 1}, {"b2", 1}});
    auto cd2 = make_cover_datum_full(m, z3, {{"v", 1}, {"b1", 2}, {"b2", 2}});
    auto w = gequiv(build_gcombinatorics(cd1), build_gcombinatorics(cd2));
    REQUIRE(w.has_value());
    CHECK(automorphisms(z3).size() == 2);
  }
  SUBCASE("different fiber sizes give none") {
    auto z2 = FiniteGroup::cyclic(2);
    auto cd1 = make_cover_datum_full(m, z2, {{"v", 1}, {"b1", 1}, {"b2", 1}});
    auto cd2 = make_cover_datum_full(m, z2, {{"v", 0}, {"b1", 1}, {"b2", 1}});
    CHECK_FALSE(gequiv(build_gcombinatorics(cd1), build_gcombinatorics(cd2)).has_value());
  }
}

TEST_CASE("the lifted graph is a modified plumbing graph") {
  // Conic + tangent line double cover: nontrivial covering matrices.
  CurveSpec spec;
  spec.components.push_back({"C", 2});
  spec.components.push_back({"L1", 1});
  SingularPointSpec t1;
  t1.id = "T";
  t1.branches.push_back({BranchSpec::Kind::Smooth, 1, 2, "t", "C"});
  t1.branches.push_back({BranchSpec::Kind::Smooth, 1, 2, "t", "L1"});
  spec.points.push_back(t1);
  auto m = build_combinatorics(spec);
  auto cd = make_cover_datum(m, FiniteGroup::cyclic(2), {{"C", 1}, {"L1", 0}});
  auto gc = build_gcombinatorics(cd);
  auto mpg = to_mpg(gc);  // validates shape and lattice compatibility
  for (int d = 0; d < mpg.base.graph.dart_count(); ++d) {
    Mat2 r = gluing_matrix(mpg, d);
    CHECK(r.det() == -1);
    CHECK(mpg.m[d].det() > 0);
  }
}

TEST_CASE("gequiv equivariance under automorphism-twisted data") {
  std::mt19937 rng(99);
  std::vector<std::vector<int>> groups{{2}, {3}, {4}, {2, 2}, {6}};
  int trials = 0;
  while (trials < 100) {
    auto gspec = groups[rng() % groups.size()];
    FiniteGroup g = FiniteGroup::from_invariant_factors(gspec);
    MarkedCombinatorics m;
    m.graph.add_vertex("v");
    m.str.push_back(0);
    m.genus.push_back(0);
    m.euler.push_back(-2);
    m.over.push_back("P");
    for (int i = 1; i <= 2; ++i) {
      m.graph.add_vertex("b" + std::to_string(i));
      m.str.push_back(1);
      m.genus.push_back(0);
      m.euler.push_back(1);
      m.over.push_back("");
      m.components.push_back({"b" + std::to_string(i), 1});
    }
    m.graph.add_edge("e1", 0, 1);
    m.graph.add_edge("e2", 0, 2);
    auto taus = automorphisms(g);
    const auto& tau = taus[rng() % taus.size()];
    std::map<std::string, int> mer, mer2;
    mer["v"] = static_cast<int>(rng() % g.order());
    mer["b1"] = static_cast<int>(rng() % g.order());
    mer["b2"] = static_cast<int>(rng() % g.order());
    for (const auto& [k, x] : mer) mer2[k] = tau[x];
    CoverDatum cd1, cd2;
    GCombinatorics gc1, gc2;
    try {
      cd1 = make_cover_datum_full(m, g, mer);
      cd2 = make_cover_datum_full(m, g, mer2);
      gc1 = build_gcombinatorics(cd1);
      gc2 = build_gcombinatorics(cd2);
    } catch (const GraphError&) {
      continue;  // inconsistent random datum (noncommuting or non-integral)
    }
    trials++;
    CHECK(gequiv(gc1, gc2).has_value());
  }
}

TEST_CASE("equivalent sources give equivalent G-combinatorics") {
  // The same datum on a relabeled copy of the source.
  auto build = [](const std::vector<std::string>& names) {
    MarkedCombinatorics m;
    m.graph.add_vertex(names[0]);
    m.str.push_back(0);
    m.genus.push_back(0);
    m.euler.push_back(-2);
    m.over.push_back("P");
    for (int i = 1; i <= 2; ++i) {
      m.graph.add_vertex(names[i]);
      m.str.push_back(1);
      m.genus.push_back(0);
      m.euler.push_back(1);
      m.over.push_back("");
      m.components.push_back({names[i], 1});
    }
    m.graph.add_edge("e1", 0, 1);
    m.graph.add_edge("e2", 0, 2);
    return m;
  };
  auto m1 = build({"v", "b1", "b2"});
  auto m2 = build({"w", "c1", "c2"});
  auto g = FiniteGroup::cyclic(2);
  auto gc1 = build_gcombinatorics(make_cover_datum_full(m1, g, {{"v", 0}, {"b1", 1}, {"b2", 1}}));
  auto gc2 = build_gcombinatorics(make_cover_datum_full(m2, g, {{"w", 0}, {"c1", 1}, {"c2", 1}}));
  CHECK(gequiv(gc1, gc2).has_value());
}

TEST_CASE("non-commuting meridians are rejected") {
  MarkedCombinatorics m;
  m.graph.add_vertex("v");
  m.str.push_back(1);
  m.genus.push_back(0);
  m.euler.push_back(-1);
  m.over.push_back("");
  m.components.push_back({"v", 1});
  m.graph.add_vertex("w");
  m.str.push_back(1);
  m.genus.push_back(0);
  m.euler.push_back(-1);
  m.over.push_back("");
  m.components.push_back({"w", 1});
  m.graph.add_edge("e", 0, 1);
  auto s3 = FiniteGroup::symmetric3();
  // Elements 3 and 5 are transpositions that do not commute.
  CHECK(s3.mul(3, 5) != s3.mul(5, 3));
  CHECK_THROWS_AS(make_cover_datum_full(m, s3, {{"v", 3}, {"w", 5}}), GraphError);
  // A commuting nonabelian assignment is fine.
  CHECK_NOTHROW(make_cover_datum_full(m, s3, {{"v", 1}, {"w", 2}}));
}

TEST_CASE("non-integral e_theta is reported, not asserted") {
  // A lone odd-euler vertex with meridian 1 under Z/2: e_theta = -1/2.
  MarkedCombinatorics m;
  m.graph.add_vertex("C");
  m.str.push_back(1);
  m.genus.push_back(0);
  m.euler.push_back(-1);
  m.over.push_back("");
  m.components.push_back({"C", 1});
  auto cd = make_cover_datum_full(m, FiniteGroup::cyclic(2), {{"C", 1}});
  auto gc = build_gcombinatorics(cd);
  REQUIRE(gc.graph.vertex_count() == 1);
  CHECK(gc.e_theta[0] == Rat(-1, 2));
  CHECK_FALSE(gc.e_theta_integral[0]);
  CHECK(gc.g_theta[0] == 0);
  CHECK_THROWS_AS(to_mpg(gc), GraphError);
}

TEST_CASE("extra generators enter G_v") {
  // A lone genus-1 component with trivial meridian under Z/2. Without extra
  // generators the cover is disconnected (two lifts); declaring a base loop
  // image of 1 makes it the connected unramified double cover of the torus,
  // which again has genus 1.
  MarkedCombinatorics m;
  m.graph.add_vertex("T");
  m.str.push_back(1);
  m.genus.push_back(1);
  m.euler.push_back(0);
  m.over.push_back("");
  m.components.push_back({"T", 3});
  auto z2 = FiniteGroup::cyclic(2);
  auto plain = build_gcombinatorics(make_cover_datum_full(m, z2, {{"T", 0}}));
  CHECK(plain.fiber_size(0) == 2);
  CHECK(plain.g_theta[0] == 1);
  auto twisted = build_gcombinatorics(make_cover_datum_full(m, z2, {{"T", 0}}, {{"T", {1}}}));
  CHECK(twisted.fiber_size(0) == 1);
  CHECK(twisted.g_theta[0] == 1);
  CHECK(twisted.e_theta[0] == Rat(0));
}

TEST_CASE("e_theta is integral on every shipped branched-cover fixture") {
  std::vector<std::pair<std::vector<long long>, int>> cases = {
      {{2}, 2}, {{1, 1}, 2}, {{3}, 3}, {{2, 1}, 3}, {{2, 2}, 4}};
  for (const auto& [parts, d] : cases) {
    auto m = build_quasi_triangular(QTType{parts, parts, parts});
    std::map<std::string, int> mer{{"C", 1}, {"L1", 0}, {"L2", 0}, {"L3", 0}};
    for (int ord : {2, d}) {
      auto gc = build_gcombinatorics(make_cover_datum(m, FiniteGroup::cyclic(ord), mer));
      for (int w = 0; w < gc.graph.vertex_count(); ++w) {
        CHECK(gc.e_theta_integral[w]);
        CHECK(gc.g_theta[w] >= 0);
      }
    }
  }
}
