#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "plumbcalc/io.hpp"
#include "plumbcalc/reverse.hpp"
#include "plumbcalc/testgen.hpp"

using namespace plumbcalc;
using nlohmann::json;

namespace {

json read_doc(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  json doc;
  in >> doc;
  return doc;
}

struct Output {
  std::string path;    // empty = stdout
  std::string format;  // json | dot

  void emit(const json& doc) const {
    std::string text = format == "dot" ? io::export_dot(doc) : io::dump(doc);
    if (path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(path);
      out << text;
    }
  }
};

// "(2),(1,1),(2)" or "2;1,1;2".
QTType parse_qt_type(const std::string& s) {
  QTType t;
  std::vector<std::vector<long long>*> parts{&t.p1, &t.p2, &t.p3};
  std::vector<std::string> groups;
  if (s.find('(') != std::string::npos) {
    size_t i = 0;
    while (i < s.size()) {
      if (s[i] == '(') {
        size_t j = s.find(')', i);
        if (j == std::string::npos) throw GraphError("unbalanced parentheses in type");
        groups.push_back(s.substr(i + 1, j - i - 1));
        i = j + 1;
      } else {
        i++;
      }
    }
  } else {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) groups.push_back(item);
  }
  if (groups.size() != 3) throw GraphError("type must have three partitions");
  for (size_t gi = 0; gi < 3; ++gi) {
    std::stringstream ss(groups[gi]);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) parts[gi]->push_back(std::stoll(item));
    if (parts[gi]->empty()) throw GraphError("empty partition in type");
  }
  return t;
}

CoverDatum cover_from_cli(const MarkedCombinatorics& m, const std::string& cover_file,
                          const std::string& group_spec, const std::string& meridian_spec) {
  if (!cover_file.empty()) return io::cover_from_json(read_doc(cover_file), m);
  if (group_spec.empty() || meridian_spec.empty())
    throw GraphError("supply a cover document or both --group and --meridians");
  std::vector<int> factors;
  {
    std::stringstream ss(group_spec);
    std::string item;
    while (std::getline(ss, item, ',')) factors.push_back(std::stoi(item));
  }
  std::map<std::string, int> mer;
  {
    std::stringstream ss(meridian_spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw GraphError("--meridians entries must be id=element");
      mer[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
    }
  }
  FiniteGroup g = FiniteGroup::from_invariant_factors(factors);
  bool full = true;
  for (int v = 0; v < m.graph.vertex_count(); ++v)
    if (!mer.count(m.graph.vertex_id(v))) full = false;
  return full ? make_cover_datum_full(m, g, mer) : make_cover_datum(m, g, mer);
}

int run(int argc, char** argv) {
  CLI::App app{"plumbcalc: plumbing-graph calculus and curve-cover combinatorics"};
  app.require_subcommand(1);
  Output out{"", "json"};
  app.add_option("--out", out.path, "output file (default stdout)");
  app.add_option("--format", out.format, "output format: json or dot")
      ->check(CLI::IsMember({"json", "dot"}));

  std::string file_a, file_b, point_id, type_str, c0_list, pair_list, center_id;
  std::string group_spec, meridian_spec;
  int selftest_n = 50;

  auto* validate = app.add_subcommand("validate", "validate a document");
  validate->add_option("file", file_a)->required();

  auto* normalize = app.add_subcommand("normalize", "F-normal form of a resolution graph");
  normalize->add_option("file", file_a)->required();

  auto* reverse = app.add_subcommand("reverse", "orientation reversal of a normal form");
  reverse->add_option("file", file_a)->required();

  auto* iform = app.add_subcommand("iform", "intersection form and definiteness");
  iform->add_option("file", file_a)->required();

  auto* wgraph = app.add_subcommand("wgraph", "Waldhausen graph of a normal form");
  wgraph->add_option("file", file_a)->required();

  auto* equiv = app.add_subcommand("equiv", "equivalence of two documents of one kind");
  equiv->add_option("a", file_a)->required();
  equiv->add_option("b", file_b)->required();

  auto* seifert = app.add_subcommand("seifert", "Seifert data of a star-shaped graph");
  seifert->add_option("file", file_a)->required();
  seifert->add_option("--center", center_id, "center vertex id");

  auto* resolve = app.add_subcommand("resolve", "resolve one singular point");
  resolve->add_option("file", file_a)->required();
  resolve->add_option("--point", point_id, "point id (default: the only point)");

  auto* build = app.add_subcommand("build", "combinatorial type of a curve spec");
  build->add_option("file", file_a)->required();

  auto* qt = app.add_subcommand("qt", "combinatorics of a quasi-triangular curve");
  qt->add_option("--type", type_str, "three partitions, e.g. \"(2),(2),(2)\"");
  qt->add_option("file", file_a, "qttype document (alternative to --type)");

  auto* gcover = app.add_subcommand("gcover", "G-combinatorics of a cover datum");
  gcover->add_option("cmb", file_a)->required();
  gcover->add_option("cover", file_b, "cover document (or use --group/--meridians)");
  gcover->add_option("--group", group_spec, "invariant factors, e.g. \"2\" or \"2,2\"");
  gcover->add_option("--meridians", meridian_spec, "assignments, e.g. \"C=1,L1=0\"");

  auto* invariants = app.add_subcommand("invariants", "splitting invariants");
  invariants->add_option("cmb", file_a)->required();
  invariants->add_option("cover", file_b, "cover document (or use --group/--meridians)");
  invariants->add_option("--group", group_spec, "invariant factors, e.g. \"2\"");
  invariants->add_option("--meridians", meridian_spec, "assignments, e.g. \"C=1,L1=0\"");
  invariants->add_option("--c0", c0_list, "subcurve components, comma separated (default: all off the branch locus)");
  invariants->add_option("--pair", pair_list, "two components for the splitting type");

  auto* gequiv_cmd = app.add_subcommand("gequiv", "G-equivalence of two gcomb documents");
  gequiv_cmd->add_option("a", file_a)->required();
  gequiv_cmd->add_option("b", file_b)->required();

  auto* dot = app.add_subcommand("dot", "DOT export of a graph document");
  dot->add_option("file", file_a)->required();

  auto* selftest = app.add_subcommand("selftest", "randomized confluence self-test");
  selftest->add_option("--n", selftest_n, "number of trials");

  for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; })) sc->fallthrough();

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) {
    json doc = read_doc(file_a);
    std::string kind = io::kind_of(doc);
    if (kind == "dpg") io::dpg_from_json(doc);
    else if (kind == "mpg") io::mpg_from_json(doc);
    else if (kind == "cmb") io::cmb_from_json(doc);
    else if (kind == "wgraph") io::wgraph_from_json(doc);
    else if (kind == "seifert") io::seifert_from_json(doc);
    else if (kind == "curvespec") build_combinatorics(io::curvespec_from_json(doc));
    else if (kind == "qttype") build_quasi_triangular(io::qttype_from_json(doc));
    else if (kind == "gcomb") io::gcomb_from_json(doc);
    else if (kind == "cover") io::group_from_json(doc.at("group"));
    else throw GraphError("cannot validate kind " + kind);
    json rep;
    rep["kind"] = kind;
    rep["valid"] = true;
    out.emit(rep);
    return 0;
  }
  if (normalize->parsed()) {
    NormalForm nf = normalize_resolution(io::dpg_from_json(read_doc(file_a)));
    json doc = io::to_json(nf.graph);
    doc["trace"] = io::trace_to_json(nf.trace);
    out.emit(doc);
    return 0;
  }
  if (reverse->parsed()) {
    out.emit(io::to_json(reverse_orientation(io::dpg_from_json(read_doc(file_a)))));
    return 0;
  }
  if (iform->parsed()) {
    DecoratedPlumbingGraph g = io::dpg_from_json(read_doc(file_a));
    IntersectionForm f = intersection_form(g);
    json rep;
    rep["kind"] = "iform";
    json vs = json::array();
    for (int v : f.vertices) vs.push_back(g.graph.vertex_id(v));
    rep["vertices"] = vs;
    json rows = json::array();
    for (const auto& row : f.m) {
      json r = json::array();
      for (const auto& x : row) r.push_back(x.str());
      rows.push_back(r);
    }
    rep["matrix"] = rows;
    rep["definiteness"] = to_string(definiteness(f));
    out.emit(rep);
    return 0;
  }
  if (wgraph->parsed()) {
    out.emit(io::to_json(to_wgraph(io::dpg_from_json(read_doc(file_a)))));
    return 0;
  }
  if (equiv->parsed()) {
    json da = read_doc(file_a), db = read_doc(file_b);
    std::string ka = io::kind_of(da), kb = io::kind_of(db);
    if (ka != kb) throw GraphError("documents have different kinds");
    json rep;
    rep["kind"] = "equiv";
    bool yes = false;
    if (ka == "dpg") {
      DecoratedPlumbingGraph a = io::dpg_from_json(da), b2 = io::dpg_from_json(db);
      auto w = dpg_equivalence_witness(a, b2);
      yes = w.has_value();
      if (w) {
        json map;
        for (int v = 0; v < a.graph.vertex_count(); ++v)
          map[a.graph.vertex_id(v)] = b2.graph.vertex_id((*w)[v]);
        rep["witness"] = map;
      }
    } else if (ka == "cmb") {
      MarkedCombinatorics a = io::cmb_from_json(da), b = io::cmb_from_json(db);
      auto w = cmb_equivalent(a, b);
      yes = w.has_value();
      if (w) {
        json map;
        for (int v = 0; v < a.graph.vertex_count(); ++v)
          map[a.graph.vertex_id(v)] = b.graph.vertex_id((*w)[v]);
        rep["witness"] = map;
      }
    } else if (ka == "wgraph") {
      WGraph a = io::wgraph_from_json(da), b = io::wgraph_from_json(db);
      auto r = wgraph_equiv(a, b);
      yes = r.equivalent;
      if (r.exceptional_pair) rep["exceptional_pair"] = true;
      if (r.witness) {
        json map;
        for (int v = 0; v < a.graph.vertex_count(); ++v)
          map[a.graph.vertex_id(v)] = b.graph.vertex_id((*r.witness)[v]);
        rep["witness"] = map;
      }
    } else {
      throw GraphError("equiv does not support kind " + ka);
    }
    rep["equivalent"] = yes;
    out.emit(rep);
    return yes ? 0 : 1;
  }
  if (seifert->parsed()) {
    json doc = read_doc(file_a);
    json rep;
    rep["kind"] = "seifert_report";
    if (io::kind_of(doc) == "seifert") {
      SeifertData sd = io::seifert_from_json(doc);
      rep["seifert"] = io::to_json(sd);
      rep["euler"] = seifert_euler(sd).str();
      rep["reversed"] = io::to_json(reverse_seifert(sd));
    } else {
      DecoratedPlumbingGraph g = io::dpg_from_json(doc);
      int center;
      if (!center_id.empty()) {
        auto c = g.graph.find_vertex(center_id);
        if (!c) throw GraphError("unknown center " + center_id);
        center = *c;
      } else {
        auto c = star_center(g);
        if (!c) throw GraphError("graph is not star-shaped");
        center = *c;
      }
      SeifertData sd = star_to_seifert(g, center);
      rep["seifert"] = io::to_json(sd);
      rep["euler"] = seifert_euler(sd).str();
      SignCheckReport scr = definiteness_sign_check(g);
      rep["definiteness"] = to_string(scr.definiteness);
      rep["consistent"] = scr.consistent;
    }
    out.emit(rep);
    return 0;
  }
  if (resolve->parsed()) {
    CurveSpec spec = io::curvespec_from_json(read_doc(file_a));
    const SingularPointSpec* pt = nullptr;
    if (point_id.empty()) {
      if (spec.points.size() != 1)
        throw GraphError("--point required when the spec has several points");
      pt = &spec.points[0];
    } else {
      for (const auto& p : spec.points)
        if (p.id == point_id) pt = &p;
      if (!pt) throw GraphError("unknown point " + point_id);
    }
    auto [g, hist] = resolve_singularity(*pt);
    json doc = io::to_json(g);
    json jh = json::array();
    for (const auto& rec : hist.records) {
      json jr;
      jr["point"] = rec.point;
      jr["center"] = rec.center;
      json objs = json::array();
      for (const auto& [id, mult] : rec.objects) objs.push_back(json::array({id, mult}));
      jr["objects"] = objs;
      jr["exceptional"] = rec.exceptional;
      jh.push_back(jr);
    }
    doc["history"] = jh;
    out.emit(doc);
    return 0;
  }
  if (build->parsed()) {
    out.emit(io::to_json(build_combinatorics(io::curvespec_from_json(read_doc(file_a)))));
    return 0;
  }
  if (qt->parsed()) {
    QTType t;
    if (!type_str.empty()) t = parse_qt_type(type_str);
    else if (!file_a.empty()) t = io::qttype_from_json(read_doc(file_a));
    else throw GraphError("qt needs --type or a qttype document");
    MarkedCombinatorics m = build_quasi_triangular(t);
    json doc = io::to_json(m);
    doc["s"] = qt_gcd_s(t);
    doc["zariski_tuple_size"] = zariski_tuple_size(t);
    out.emit(doc);
    return 0;
  }
  if (gcover->parsed()) {
    MarkedCombinatorics m = io::cmb_from_json(read_doc(file_a));
    CoverDatum cd = cover_from_cli(m, file_b, group_spec, meridian_spec);
    for (const auto& w : cd.warnings) std::cerr << "warning: " << w << "\n";
    out.emit(io::to_json(build_gcombinatorics(cd)));
    return 0;
  }
  if (invariants->parsed()) {
    MarkedCombinatorics m = io::cmb_from_json(read_doc(file_a));
    CoverDatum cd = cover_from_cli(m, file_b, group_spec, meridian_spec);
    GCombinatorics gc = build_gcombinatorics(cd);
    std::set<std::string> branch = branch_locus(cd);
    std::set<std::string> c0;
    if (!c0_list.empty()) {
      std::stringstream ss(c0_list);
      std::string item;
      while (std::getline(ss, item, ',')) c0.insert(item);
    } else {
      for (const auto& c : m.components)
        if (!branch.count(c.id)) c0.insert(c.id);
    }
    json rep;
    rep["kind"] = "invariants";
    json sn;
    for (const auto& c : c0) sn[c] = splitting_number(gc, c);
    rep["splitting_numbers"] = sn;
    SubCombinatorics sc = subcombinatorics(gc, c0, branch);
    rep["connected_number"] = connected_number(sc);
    if (!pair_list.empty()) {
      auto comma = pair_list.find(',');
      if (comma == std::string::npos) throw GraphError("--pair needs two components");
      auto st = splitting_type(gc, pair_list.substr(0, comma), pair_list.substr(comma + 1), branch);
      rep["splitting_type"] = json::array({st.first, st.second});
    }
    json sg = io::splitting_graph_to_json(splitting_graph(sc));
    if (out.format == "dot") {
      Output d = out;
      d.emit(sg);
      return 0;
    }
    rep["splitting_graph"] = sg;
    out.emit(rep);
    return 0;
  }
  if (gequiv_cmd->parsed()) {
    GCombinatorics a = io::gcomb_from_json(read_doc(file_a));
    GCombinatorics b = io::gcomb_from_json(read_doc(file_b));
    auto w = gequiv(a, b);
    json rep;
    rep["kind"] = "gequiv";
    rep["equivalent"] = w.has_value();
    if (w) {
      json base, lifted;
      for (int v = 0; v < a.datum.source.graph.vertex_count(); ++v)
        base[a.datum.source.graph.vertex_id(v)] = b.datum.source.graph.vertex_id(w->base_map[v]);
      for (int v = 0; v < a.graph.vertex_count(); ++v)
        lifted[a.graph.vertex_id(v)] = b.graph.vertex_id(w->lifted_map[v]);
      rep["witness"] = {{"base", base}, {"lifted", lifted}, {"tau", w->tau}};
    }
    out.emit(rep);
    return w ? 0 : 1;
  }
  if (dot->parsed()) {
    Output d = out;
    d.format = "dot";
    d.emit(read_doc(file_a));
    return 0;
  }
  if (selftest->parsed()) {
    uint64_t seed = 1;
    if (const char* env = std::getenv("PLUMBCALC_SEED")) seed = std::strtoull(env, nullptr, 10);
    ConfluenceReport rep = confluence_selftest(seed, selftest_n);
    json j;
    j["kind"] = "selftest";
    j["seed"] = seed;
    j["trials"] = rep.trials;
    j["failures"] = rep.failures;
    out.emit(j);
    return rep.failures == 0 ? 0 : 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const GraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
