#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "plumbcalc/io.hpp"
#include "plumbcalc/reverse.hpp"
#include "plumbcalc/testgen.hpp"

namespace py = pybind11;
using namespace plumbcalc;
using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw GraphError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dpg_op(const std::string& doc, const std::function<json(DecoratedPlumbingGraph&)>& f) {
  auto g = io::dpg_from_json(parse(doc));
  return io::dump(f(g));
}

}  // namespace

PYBIND11_MODULE(_plumbcalc, m) {
  m.doc() = "plumbing-graph calculus and curve-cover combinatorics";

  py::register_exception<GraphError>(m, "GraphError");

  m.def("validate", [](const std::string& doc) {
    json j = parse(doc);
    std::string kind = io::kind_of(j);
    if (kind == "dpg") io::dpg_from_json(j);
    else if (kind == "mpg") io::mpg_from_json(j);
    else if (kind == "cmb") io::cmb_from_json(j);
    else if (kind == "wgraph") io::wgraph_from_json(j);
    else if (kind == "seifert") io::seifert_from_json(j);
    else if (kind == "curvespec") build_combinatorics(io::curvespec_from_json(j));
    else if (kind == "qttype") build_quasi_triangular(io::qttype_from_json(j));
    else if (kind == "gcomb") io::gcomb_from_json(j);
    else throw GraphError("cannot validate kind " + kind);
    return kind;
  }, py::arg("doc"), "Validate a JSON document; returns its kind.");

  m.def("normalize", [](const std::string& doc) {
    return dpg_op(doc, [](DecoratedPlumbingGraph& g) {
      NormalForm nf = normalize_resolution(g);
      json out = io::to_json(nf.graph);
      out["trace"] = io::trace_to_json(nf.trace);
      return out;
    });
  }, py::arg("doc"), "F-normal form of a resolution graph with the rewrite trace.");

  m.def("reverse_orientation", [](const std::string& doc) {
    return dpg_op(doc, [](DecoratedPlumbingGraph& g) { return io::to_json(reverse_orientation(g)); });
  }, py::arg("doc"));

  m.def("intersection_form", [](const std::string& doc) {
    auto g = io::dpg_from_json(parse(doc));
    auto f = plumbcalc::intersection_form(g);
    json out;
    json vs = json::array();
    for (int v : f.vertices) vs.push_back(g.graph.vertex_id(v));
    out["vertices"] = vs;
    json rows = json::array();
    for (const auto& row : f.m) {
      json r = json::array();
      for (const auto& x : row) r.push_back(x.str());
      rows.push_back(r);
    }
    out["matrix"] = rows;
    out["definiteness"] = to_string(definiteness(f));
    return io::dump(out);
  }, py::arg("doc"));

  m.def("chain_dual", [](const std::vector<long long>& b) { return chain_dual(b); }, py::arg("b"));

  m.def("cf_convergents", [](const std::vector<long long>& b) {
    auto cv = cf_convergents(b);
    return std::pair<std::string, std::string>(cv.c.str(), cv.d.str());
  }, py::arg("b"), "Convergent pair (c_k, d_k) of the descending continued fraction.");

  m.def("to_wgraph", [](const std::string& doc) {
    return dpg_op(doc, [](DecoratedPlumbingGraph& g) { return io::to_json(to_wgraph(g)); });
  }, py::arg("doc"));

  m.def("dpg_equivalent", [](const std::string& a, const std::string& b) {
    return dpg_equivalent(io::dpg_from_json(parse(a)), io::dpg_from_json(parse(b)));
  }, py::arg("a"), py::arg("b"));

  m.def("wgraph_equivalent", [](const std::string& a, const std::string& b) {
    return wgraph_equiv(io::wgraph_from_json(parse(a)), io::wgraph_from_json(parse(b))).equivalent;
  }, py::arg("a"), py::arg("b"));

  m.def("star_seifert", [](const std::string& doc) {
    auto g = io::dpg_from_json(parse(doc));
    auto c = star_center(g);
    if (!c) throw GraphError("graph is not star-shaped");
    SeifertData sd = star_to_seifert(g, *c);
    auto rep = definiteness_sign_check(g);
    json out;
    out["seifert"] = io::to_json(sd);
    out["euler"] = seifert_euler(sd).str();
    out["definiteness"] = to_string(rep.definiteness);
    out["consistent"] = rep.consistent;
    return io::dump(out);
  }, py::arg("doc"));

  m.def("seifert_euler", [](const std::string& doc) {
    return seifert_euler(io::seifert_from_json(parse(doc))).str();
  }, py::arg("doc"));

  m.def("reverse_seifert", [](const std::string& doc) {
    return io::dump(io::to_json(reverse_seifert(io::seifert_from_json(parse(doc)))));
  }, py::arg("doc"));

  m.def("multiplicity_sequence",
        [](long long p, long long q) { return multiplicity_sequence(p, q); }, py::arg("p"),
        py::arg("q"));

  m.def("resolve_singularity", [](const std::string& doc, const std::string& point) {
    CurveSpec spec = io::curvespec_from_json(parse(doc));
    for (const auto& pt : spec.points) {
      if (pt.id != point && !(point.empty() && spec.points.size() == 1)) continue;
      auto [g, hist] = resolve_singularity(pt);
      return io::dump(io::to_json(g));
    }
    throw GraphError("unknown point " + point);
  }, py::arg("doc"), py::arg("point") = "");

  m.def("build_combinatorics", [](const std::string& doc) {
    return io::dump(io::to_json(build_combinatorics(io::curvespec_from_json(parse(doc)))));
  }, py::arg("doc"));

  m.def("build_quasi_triangular",
        [](const std::vector<long long>& p1, const std::vector<long long>& p2,
           const std::vector<long long>& p3) {
          QTType t{p1, p2, p3};
          auto m2 = build_quasi_triangular(t);
          json doc = io::to_json(m2);
          doc["s"] = qt_gcd_s(t);
          doc["zariski_tuple_size"] = zariski_tuple_size(t);
          return io::dump(doc);
        },
        py::arg("p1"), py::arg("p2"), py::arg("p3"));

  m.def("local_graph_at", [](const std::string& doc, const std::string& point) {
    return io::dump(io::to_json(local_graph_at(io::cmb_from_json(parse(doc)), point)));
  }, py::arg("doc"), py::arg("point"));

  m.def("cmb_equivalent", [](const std::string& a, const std::string& b) {
    return cmb_equivalent(io::cmb_from_json(parse(a)), io::cmb_from_json(parse(b))).has_value();
  }, py::arg("a"), py::arg("b"));

  m.def("build_gcombinatorics", [](const std::string& cmb, const std::string& cover) {
    auto m2 = io::cmb_from_json(parse(cmb));
    auto cd = io::cover_from_json(parse(cover), m2);
    return io::dump(io::to_json(build_gcombinatorics(cd)));
  }, py::arg("cmb"), py::arg("cover"));

  m.def("gequiv", [](const std::string& a, const std::string& b) {
    return gequiv(io::gcomb_from_json(parse(a)), io::gcomb_from_json(parse(b))).has_value();
  }, py::arg("a"), py::arg("b"));

  m.def("invariants", [](const std::string& cmb, const std::string& cover,
                         const std::vector<std::string>& c0, const std::string& pair) {
    auto m2 = io::cmb_from_json(parse(cmb));
    auto cd = io::cover_from_json(parse(cover), m2);
    auto gc = build_gcombinatorics(cd);
    std::set<std::string> branch = branch_locus(cd);
    std::set<std::string> sub(c0.begin(), c0.end());
    if (sub.empty())
      for (const auto& c : m2.components)
        if (!branch.count(c.id)) sub.insert(c.id);
    json rep;
    rep["kind"] = "invariants";
    json sn;
    for (const auto& c : sub) sn[c] = splitting_number(gc, c);
    rep["splitting_numbers"] = sn;
    auto sc = subcombinatorics(gc, sub, branch);
    rep["connected_number"] = connected_number(sc);
    if (!pair.empty()) {
      auto comma = pair.find(',');
      if (comma == std::string::npos) throw GraphError("pair must be 'a,b'");
      auto st = splitting_type(gc, pair.substr(0, comma), pair.substr(comma + 1), branch);
      rep["splitting_type"] = json::array({st.first, st.second});
    }
    rep["splitting_graph"] = io::splitting_graph_to_json(splitting_graph(sc));
    return io::dump(rep);
  }, py::arg("cmb"), py::arg("cover"), py::arg("c0") = std::vector<std::string>{},
     py::arg("pair") = "");

  m.def("export_dot", [](const std::string& doc) { return io::export_dot(parse(doc)); },
        py::arg("doc"));

  m.def("selftest", [](unsigned long long seed, int trials) {
    auto rep = confluence_selftest(seed, trials);
    return std::pair<int, int>(rep.trials, rep.failures);
  }, py::arg("seed") = 1, py::arg("trials") = 25);
}
