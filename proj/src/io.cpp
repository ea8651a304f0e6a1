#include "plumbcalc/io.hpp"

#include <sstream>

namespace plumbcalc::io {

namespace {

json mat_to_json(const Mat2& m) {
  return json::array({m.a[0].str(), m.a[1].str(), m.a[2].str(), m.a[3].str()});
}

Mat2 mat_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw GraphError("matrix must be a 4-array");
  Mat2 m;
  for (int i = 0; i < 4; ++i)
    m.a[i] = j[i].is_string() ? Int(j[i].get<std::string>()) : Int(j[i].get<long long>());
  return m;
}

json int_to_json(const Int& v) {
  if (v >= Int(std::numeric_limits<long long>::min()) &&
      v <= Int(std::numeric_limits<long long>::max()))
    return json(static_cast<long long>(v));
  return json(v.str());
}

Int int_from_json(const json& j) {
  return j.is_string() ? Int(j.get<std::string>()) : Int(j.get<long long>());
}

void expect_kind(const json& doc, const std::string& kind) {
  if (kind_of(doc) != kind)
    throw GraphError("expected a '" + kind + "' document, got '" + kind_of(doc) + "'");
}

}  // namespace

std::string kind_of(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
    throw GraphError("document has no kind");
  return doc["kind"].get<std::string>();
}

json to_json(const DecoratedPlumbingGraph& g) {
  json doc;
  doc["kind"] = "dpg";
  json vs = json::array();
  for (int v = 0; v < g.graph.vertex_count(); ++v) {
    json jv;
    jv["id"] = g.graph.vertex_id(v);
    jv["kind"] = g.is_boundary(v) ? "boundary" : "interior";
    if (g.is_interior(v)) {
      jv["genus"] = g.genus[v];
      jv["euler"] = g.euler[v];
    }
    vs.push_back(jv);
  }
  doc["vertices"] = vs;
  json es = json::array();
  for (int e = 0; e < g.graph.edge_count(); ++e) {
    int d = DartGraph::representative(e);
    json je;
    je["id"] = g.graph.edge_id(e);
    je["from"] = g.graph.vertex_id(g.graph.origin(d));
    je["to"] = g.graph.vertex_id(g.graph.terminus(d));
    je["sign"] = g.sign[e];
    char def = g.sign[e] < 0 ? 1 : 0;
    if (g.eps_weight[e] != def) je["eps"] = static_cast<int>(g.eps_weight[e]);
    es.push_back(je);
  }
  doc["edges"] = es;
  return doc;
}

DecoratedPlumbingGraph dpg_from_json(const json& doc) {
  expect_kind(doc, "dpg");
  DpgBuilder b;
  std::map<std::string, int> idx;
  for (const auto& jv : doc.at("vertices")) {
    std::string id = jv.at("id").get<std::string>();
    std::string kind = jv.at("kind").get<std::string>();
    if (kind == "boundary") {
      idx[id] = b.boundary(id);
    } else if (kind == "interior") {
      idx[id] = b.interior(id, jv.at("euler").get<long long>(),
                           jv.value("genus", 0LL));
    } else {
      throw GraphError("vertex kind must be interior or boundary: " + id);
    }
  }
  int auto_id = 0;
  std::vector<std::pair<int, char>> eps;
  for (const auto& je : doc.at("edges")) {
    std::string id = je.contains("id") ? je.at("id").get<std::string>()
                                       : "e" + std::to_string(auto_id);
    auto_id++;
    auto from = idx.find(je.at("from").get<std::string>());
    auto to = idx.find(je.at("to").get<std::string>());
    if (from == idx.end() || to == idx.end()) throw GraphError("edge endpoint unknown: " + id);
    int e = b.edge(id, from->second, to->second, je.value("sign", 1));
    if (je.contains("eps")) eps.emplace_back(e, static_cast<char>(je.at("eps").get<int>()));
  }
  DecoratedPlumbingGraph g = b.build();
  for (auto [e, w] : eps) g.eps_weight[e] = w;
  validate_dpg(g);
  return g;
}

json to_json(const ModifiedPlumbingGraph& g) {
  json doc = to_json(g.base);
  doc["kind"] = "mpg";
  for (size_t i = 0; i < doc["edges"].size(); ++i) {
    int e = *g.base.graph.find_edge(doc["edges"][i]["id"].get<std::string>());
    doc["edges"][i]["m_fwd"] = mat_to_json(g.m[2 * e]);
    doc["edges"][i]["m_bwd"] = mat_to_json(g.m[2 * e + 1]);
  }
  return doc;
}

ModifiedPlumbingGraph mpg_from_json(const json& doc) {
  expect_kind(doc, "mpg");
  json base = doc;
  base["kind"] = "dpg";
  ModifiedPlumbingGraph g;
  g.base = dpg_from_json(base);
  g.m.assign(g.base.graph.dart_count(), Mat2::identity());
  for (const auto& je : doc.at("edges")) {
    int e = *g.base.graph.find_edge(je.at("id").get<std::string>());
    g.m[2 * e] = mat_from_json(je.at("m_fwd"));
    g.m[2 * e + 1] = mat_from_json(je.at("m_bwd"));
  }
  validate_mpg(g);
  return g;
}

namespace {

json branch_to_json(const BranchSpec& b) {
  json j;
  j["component"] = b.component;
  j["kind"] = b.kind == BranchSpec::Kind::Cusp ? "cusp" : "smooth";
  if (b.kind == BranchSpec::Kind::Cusp) {
    j["p"] = b.p;
    j["q"] = b.q;
  }
  j["tangent"] = b.tangent;
  return j;
}

BranchSpec branch_from_json(const json& j) {
  BranchSpec b;
  b.component = j.at("component").get<std::string>();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "cusp") {
    b.kind = BranchSpec::Kind::Cusp;
    b.p = j.at("p").get<long long>();
    b.q = j.at("q").get<long long>();
  } else if (kind == "smooth") {
    b.kind = BranchSpec::Kind::Smooth;
  } else {
    throw GraphError("branch kind must be smooth or cusp");
  }
  b.tangent = j.at("tangent").get<std::string>();
  return b;
}

json points_to_json(const std::vector<SingularPointSpec>& pts) {
  json out = json::array();
  for (const auto& p : pts) {
    json jp;
    jp["id"] = p.id;
    json bs = json::array();
    for (const auto& b : p.branches) bs.push_back(branch_to_json(b));
    jp["branches"] = bs;
    out.push_back(jp);
  }
  return out;
}

std::vector<SingularPointSpec> points_from_json(const json& j) {
  std::vector<SingularPointSpec> out;
  for (const auto& jp : j) {
    SingularPointSpec p;
    p.id = jp.at("id").get<std::string>();
    for (const auto& jb : jp.at("branches")) p.branches.push_back(branch_from_json(jb));
    out.push_back(p);
  }
  return out;
}

}  // namespace

json to_json(const MarkedCombinatorics& m) {
  json doc;
  doc["kind"] = "cmb";
  json vs = json::array();
  for (int v = 0; v < m.graph.vertex_count(); ++v) {
    json jv;
    jv["id"] = m.graph.vertex_id(v);
    jv["str"] = m.is_str(v);
    jv["genus"] = m.genus[v];
    jv["euler"] = m.euler[v];
    if (!m.over[v].empty()) jv["over"] = m.over[v];
    vs.push_back(jv);
  }
  doc["vertices"] = vs;
  json es = json::array();
  for (int e = 0; e < m.graph.edge_count(); ++e) {
    int d = DartGraph::representative(e);
    json je;
    je["id"] = m.graph.edge_id(e);
    je["from"] = m.graph.vertex_id(m.graph.origin(d));
    je["to"] = m.graph.vertex_id(m.graph.terminus(d));
    es.push_back(je);
  }
  doc["edges"] = es;
  json comps = json::array();
  for (const auto& c : m.components) comps.push_back({{"degree", c.degree}, {"id", c.id}});
  doc["components"] = comps;
  doc["points"] = points_to_json(m.points);
  json hist = json::array();
  for (const auto& rec : m.history.records) {
    json jr;
    jr["point"] = rec.point;
    jr["center"] = rec.center;
    json objs = json::array();
    for (const auto& [id, mult] : rec.objects) objs.push_back(json::array({id, mult}));
    jr["objects"] = objs;
    jr["exceptional"] = rec.exceptional;
    hist.push_back(jr);
  }
  doc["history"] = hist;
  return doc;
}

MarkedCombinatorics cmb_from_json(const json& doc) {
  expect_kind(doc, "cmb");
  MarkedCombinatorics m;
  for (const auto& jv : doc.at("vertices")) {
    m.graph.add_vertex(jv.at("id").get<std::string>());
    m.str.push_back(jv.at("str").get<bool>() ? 1 : 0);
    m.genus.push_back(jv.at("genus").get<long long>());
    m.euler.push_back(jv.at("euler").get<long long>());
    m.over.push_back(jv.value("over", std::string()));
  }
  int auto_id = 0;
  for (const auto& je : doc.at("edges")) {
    std::string id =
        je.contains("id") ? je.at("id").get<std::string>() : "x" + std::to_string(auto_id);
    auto_id++;
    m.graph.add_edge(id, m.vertex_of(je.at("from").get<std::string>()),
                     m.vertex_of(je.at("to").get<std::string>()));
  }
  for (const auto& jc : doc.value("components", json::array()))
    m.components.push_back({jc.at("id").get<std::string>(), jc.at("degree").get<long long>()});
  if (doc.contains("points")) m.points = points_from_json(doc.at("points"));
  for (const auto& jr : doc.value("history", json::array())) {
    BlowUpRecord rec;
    rec.point = jr.at("point").get<std::string>();
    rec.center = jr.at("center").get<std::string>();
    for (const auto& jo : jr.at("objects"))
      rec.objects.emplace_back(jo.at(0).get<std::string>(), jo.at(1).get<long long>());
    rec.exceptional = jr.at("exceptional").get<std::string>();
    m.history.records.push_back(rec);
  }
  m.graph.check_valid();
  return m;
}

json to_json(const WGraph& w) {
  json doc;
  doc["kind"] = "wgraph";
  json vs = json::array();
  for (int v = 0; v < w.graph.vertex_count(); ++v) {
    json jv;
    jv["id"] = w.graph.vertex_id(v);
    jv["weighted"] = w.vw[v].weighted;
    if (w.vw[v].weighted) {
      jv["genus"] = w.vw[v].g;
      jv["boundary"] = w.vw[v].r;
      jv["euler"] = w.vw[v].s;
    }
    vs.push_back(jv);
  }
  doc["vertices"] = vs;
  json es = json::array();
  for (int e = 0; e < w.graph.edge_count(); ++e) {
    int d = DartGraph::representative(e);
    json je;
    je["id"] = w.graph.edge_id(e);
    je["from"] = w.graph.vertex_id(w.graph.origin(d));
    je["to"] = w.graph.vertex_id(w.graph.terminus(d));
    je["alpha"] = int_to_json(w.ab[d].first);
    je["beta_into_to"] = int_to_json(w.ab[d].second);
    je["beta_into_from"] = int_to_json(w.ab[DartGraph::involution(d)].second);
    je["sign"] = w.sign[e];
    if (w.eps_weight[e]) je["eps"] = 1;
    es.push_back(je);
  }
  doc["edges"] = es;
  return doc;
}

WGraph wgraph_from_json(const json& doc) {
  expect_kind(doc, "wgraph");
  WGraph w;
  for (const auto& jv : doc.at("vertices")) {
    w.graph.add_vertex(jv.at("id").get<std::string>());
    WGraph::VWeight vw;
    vw.weighted = jv.at("weighted").get<bool>();
    if (vw.weighted) {
      vw.g = jv.at("genus").get<long long>();
      vw.r = jv.at("boundary").get<long long>();
      vw.s = jv.at("euler").get<long long>();
    }
    w.vw.push_back(vw);
  }
  for (const auto& je : doc.at("edges")) {
    int from = *w.graph.find_vertex(je.at("from").get<std::string>());
    int to = *w.graph.find_vertex(je.at("to").get<std::string>());
    int e = w.graph.add_edge(je.at("id").get<std::string>(), from, to);
    w.ab.resize(2 * e + 2);
    Int alpha = int_from_json(je.at("alpha"));
    w.ab[2 * e] = {alpha, int_from_json(je.at("beta_into_to"))};
    w.ab[2 * e + 1] = {alpha, int_from_json(je.at("beta_into_from"))};
    w.sign.push_back(je.value("sign", 1));
    w.eps_weight.push_back(static_cast<char>(je.value("eps", 0)));
  }
  validate_wgraph(w);
  return w;
}

json to_json(const SeifertData& sd) {
  json doc;
  doc["kind"] = "seifert";
  doc["genus"] = sd.genus;
  doc["boundary"] = sd.boundary;
  doc["s"] = int_to_json(sd.s);
  json fs = json::array();
  for (const auto& f : sd.fibers)
    fs.push_back(json::array({int_to_json(f.alpha), int_to_json(f.beta)}));
  doc["fibers"] = fs;
  return doc;
}

SeifertData seifert_from_json(const json& doc) {
  expect_kind(doc, "seifert");
  SeifertData sd;
  sd.genus = doc.at("genus").get<long long>();
  sd.boundary = doc.at("boundary").get<long long>();
  sd.s = int_from_json(doc.at("s"));
  for (const auto& jf : doc.at("fibers"))
    sd.fibers.push_back({int_from_json(jf.at(0)), int_from_json(jf.at(1))});
  validate_seifert(sd);
  return sd;
}

json group_to_json(const FiniteGroup& g) {
  json doc;
  doc["order"] = g.order();
  json table = json::array();
  for (int a = 0; a < g.order(); ++a) {
    json row = json::array();
    for (int b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
    table.push_back(row);
  }
  doc["table"] = table;
  return doc;
}

FiniteGroup group_from_json(const json& doc) {
  if (doc.contains("invariant_factors")) {
    std::vector<int> fs;
    for (const auto& f : doc.at("invariant_factors")) fs.push_back(f.get<int>());
    return FiniteGroup::from_invariant_factors(fs);
  }
  if (doc.contains("name")) {
    std::string name = doc.at("name").get<std::string>();
    if (name == "S3") return FiniteGroup::symmetric3();
    throw GraphError("unknown group name: " + name);
  }
  if (doc.contains("table")) {
    std::vector<std::vector<int>> table;
    for (const auto& row : doc.at("table")) {
      table.emplace_back();
      for (const auto& x : row) table.back().push_back(x.get<int>());
    }
    FiniteGroup g(table);
    if (doc.contains("order") && doc.at("order").get<int>() != g.order())
      throw GraphError("group order disagrees with the table");
    return g;
  }
  throw GraphError("group needs a table, invariant_factors, or name");
}

json cover_to_json(const CoverDatum& cd) {
  json doc;
  doc["kind"] = "cover";
  doc["group"] = group_to_json(cd.group);
  json mer;
  for (int v = 0; v < cd.source.graph.vertex_count(); ++v)
    mer[cd.source.graph.vertex_id(v)] = cd.meridian[v];
  doc["meridians"] = mer;
  if (!cd.extra.empty()) {
    json ex;
    for (const auto& [v, gens] : cd.extra) ex[cd.source.graph.vertex_id(v)] = gens;
    doc["extra"] = ex;
  }
  return doc;
}

CoverDatum cover_from_json(const json& doc, const MarkedCombinatorics& source) {
  expect_kind(doc, "cover");
  FiniteGroup g = group_from_json(doc.at("group"));
  std::map<std::string, int> mer;
  for (const auto& [k, v] : doc.at("meridians").items()) mer[k] = v.get<int>();
  std::map<std::string, std::vector<int>> extra;
  if (doc.contains("extra"))
    for (const auto& [k, v] : doc.at("extra").items())
      extra[k] = v.get<std::vector<int>>();
  bool full = true;
  for (int v = 0; v < source.graph.vertex_count(); ++v)
    if (!mer.count(source.graph.vertex_id(v))) full = false;
  if (full) return make_cover_datum_full(source, g, mer, extra);
  return make_cover_datum(source, g, mer, extra);
}

json to_json(const GCombinatorics& gc) {
  json doc;
  doc["kind"] = "gcomb";
  doc["source"] = to_json(gc.datum.source);
  doc["cover"] = cover_to_json(gc.datum);
  json vs = json::array();
  for (int w = 0; w < gc.graph.vertex_count(); ++w) {
    json jv;
    jv["id"] = gc.graph.vertex_id(w);
    jv["pr"] = gc.datum.source.graph.vertex_id(gc.pr_vertex[w]);
    jv["g_theta"] = gc.g_theta[w];
    jv["e_theta"] = gc.e_theta[w].str();
    jv["e_integral"] = static_cast<bool>(gc.e_theta_integral[w]);
    // Orbit annotation: least vertex id in the G-orbit.
    int best = w;
    for (int x = 0; x < gc.datum.group.order(); ++x) best = std::min(best, gc.vertex_action[x][w]);
    jv["orbit"] = gc.graph.vertex_id(best);
    vs.push_back(jv);
  }
  doc["vertices"] = vs;
  json es = json::array();
  for (int e = 0; e < gc.graph.edge_count(); ++e) {
    int d = DartGraph::representative(e);
    json je;
    je["id"] = gc.graph.edge_id(e);
    je["from"] = gc.graph.vertex_id(gc.graph.origin(d));
    je["to"] = gc.graph.vertex_id(gc.graph.terminus(d));
    je["pr"] = gc.datum.source.graph.edge_id(gc.pr_edge[e]);
    je["m_fwd"] = mat_to_json(gc.m_theta[d]);
    je["m_bwd"] = mat_to_json(gc.m_theta[DartGraph::involution(d)]);
    es.push_back(je);
  }
  doc["edges"] = es;
  return doc;
}

GCombinatorics gcomb_from_json(const json& doc) {
  expect_kind(doc, "gcomb");
  MarkedCombinatorics src = cmb_from_json(doc.at("source"));
  CoverDatum cd = cover_from_json(doc.at("cover"), src);
  return build_gcombinatorics(cd);
}

json to_json(const CurveSpec& spec) {
  json doc;
  doc["kind"] = "curvespec";
  json comps = json::array();
  for (const auto& c : spec.components) comps.push_back({{"degree", c.degree}, {"id", c.id}});
  doc["components"] = comps;
  doc["points"] = points_to_json(spec.points);
  return doc;
}

CurveSpec curvespec_from_json(const json& doc) {
  expect_kind(doc, "curvespec");
  CurveSpec spec;
  for (const auto& jc : doc.at("components"))
    spec.components.push_back({jc.at("id").get<std::string>(), jc.at("degree").get<long long>()});
  spec.points = points_from_json(doc.at("points"));
  return spec;
}

json to_json(const QTType& t) {
  json doc;
  doc["kind"] = "qttype";
  doc["p1"] = t.p1;
  doc["p2"] = t.p2;
  doc["p3"] = t.p3;
  return doc;
}

QTType qttype_from_json(const json& doc) {
  expect_kind(doc, "qttype");
  QTType t;
  t.p1 = doc.at("p1").get<std::vector<long long>>();
  t.p2 = doc.at("p2").get<std::vector<long long>>();
  t.p3 = doc.at("p3").get<std::vector<long long>>();
  return t;
}

json trace_to_json(const std::vector<RewriteSite>& trace) {
  json out = json::array();
  for (const auto& s : trace) {
    json js;
    js["op"] = to_string(s.op);
    js["site"] = s.matched;
    out.push_back(js);
  }
  return out;
}

json splitting_graph_to_json(const SplittingGraph& sg) {
  json doc;
  doc["kind"] = "splitting_graph";
  json vs = json::array();
  for (int v = 0; v < sg.graph.vertex_count(); ++v)
    vs.push_back({{"id", sg.graph.vertex_id(v)}, {"part", sg.part[v]}});
  doc["vertices"] = vs;
  json es = json::array();
  for (int e = 0; e < sg.graph.edge_count(); ++e) {
    int d = DartGraph::representative(e);
    es.push_back({{"from", sg.graph.vertex_id(sg.graph.origin(d))},
                  {"id", sg.graph.edge_id(e)},
                  {"to", sg.graph.vertex_id(sg.graph.terminus(d))}});
  }
  doc["edges"] = es;
  return doc;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string export_dot(const json& doc) {
  std::ostringstream os;
  std::string kind = kind_of(doc);
  os << "graph plumbing {\n  node [shape=circle];\n";
  auto vertex_line = [&](const std::string& id, const std::string& label,
                         const std::string& extra) {
    os << "  \"" << dot_escape(id) << "\" [label=\"" << dot_escape(label) << "\"" << extra
       << "];\n";
  };
  if (kind == "dpg" || kind == "mpg") {
    for (const auto& jv : doc.at("vertices")) {
      std::string id = jv.at("id").get<std::string>();
      if (jv.at("kind").get<std::string>() == "boundary") {
        vertex_line(id, "", ", shape=rarrow, width=0.3");
      } else {
        long long e = jv.at("euler").get<long long>();
        long long g = jv.value("genus", 0LL);
        std::string label = std::to_string(e);
        if (g != 0) label += " [" + std::to_string(g) + "]";
        vertex_line(id, label, "");
      }
    }
  } else if (kind == "cmb") {
    for (const auto& jv : doc.at("vertices")) {
      std::string id = jv.at("id").get<std::string>();
      long long e = jv.at("euler").get<long long>();
      long long g = jv.at("genus").get<long long>();
      std::string label = id + ": " + std::to_string(e);
      if (g != 0) label += " [" + std::to_string(g) + "]";
      vertex_line(id, label, jv.at("str").get<bool>() ? ", shape=doublecircle" : "");
    }
  } else if (kind == "wgraph") {
    for (const auto& jv : doc.at("vertices")) {
      std::string id = jv.at("id").get<std::string>();
      if (jv.at("weighted").get<bool>()) {
        std::string label = "(" + std::to_string(jv.at("genus").get<long long>()) + "," +
                            std::to_string(jv.at("boundary").get<long long>()) + "," +
                            std::to_string(jv.at("euler").get<long long>()) + ")";
        vertex_line(id, label, "");
      } else {
        vertex_line(id, "", ", shape=point");
      }
    }
  } else if (kind == "gcomb") {
    for (const auto& jv : doc.at("vertices")) {
      std::string id = jv.at("id").get<std::string>();
      std::string label = id + ": " + jv.at("e_theta").get<std::string>() + " [" +
                          std::to_string(jv.at("g_theta").get<long long>()) + "]";
      vertex_line(id, label, "");
    }
  } else if (kind == "splitting_graph") {
    for (const auto& jv : doc.at("vertices")) {
      std::string id = jv.at("id").get<std::string>();
      vertex_line(id, id, jv.at("part").get<int>() == 1 ? ", shape=doublecircle" : ", shape=square");
    }
  } else {
    throw GraphError("dot export not supported for kind " + kind);
  }
  for (const auto& je : doc.at("edges")) {
    os << "  \"" << dot_escape(je.at("from").get<std::string>()) << "\" -- \""
       << dot_escape(je.at("to").get<std::string>()) << "\"";
    std::vector<std::string> attrs;
    if (je.contains("sign") && je.at("sign").get<int>() < 0) attrs.push_back("style=dashed");
    if (je.contains("alpha")) {
      std::string alpha = je.at("alpha").is_string() ? je.at("alpha").get<std::string>()
                                                     : std::to_string(je.at("alpha").get<long long>());
      std::string beta = je.at("beta_into_to").is_string()
                             ? je.at("beta_into_to").get<std::string>()
                             : std::to_string(je.at("beta_into_to").get<long long>());
      attrs.push_back("label=\"(" + alpha + "," + beta + ")\"");
    }
    if (!attrs.empty()) {
      os << " [" << attrs[0];
      for (size_t i = 1; i < attrs.size(); ++i) os << ", " << attrs[i];
      os << "]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace plumbcalc::io
