#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "plumbcalc/curves.hpp"
#include "plumbcalc/gcover.hpp"
#include "plumbcalc/mpg.hpp"
#include "plumbcalc/rewrite.hpp"
#include "plumbcalc/seifert.hpp"
#include "plumbcalc/splitting.hpp"
#include "plumbcalc/wgraph.hpp"

namespace plumbcalc::io {

using nlohmann::json;

// Document kinds: dpg, mpg, cmb, gcomb, wgraph, cover, curvespec, qttype, seifert.
std::string kind_of(const json& doc);

json to_json(const DecoratedPlumbingGraph& g);
DecoratedPlumbingGraph dpg_from_json(const json& doc);

json to_json(const ModifiedPlumbingGraph& g);
ModifiedPlumbingGraph mpg_from_json(const json& doc);

json to_json(const MarkedCombinatorics& m);
MarkedCombinatorics cmb_from_json(const json& doc);

json to_json(const WGraph& w);
WGraph wgraph_from_json(const json& doc);

json to_json(const SeifertData& sd);
SeifertData seifert_from_json(const json& doc);

json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const json& doc);

json cover_to_json(const CoverDatum& cd);
// Needs the source combinatorics; the document carries meridians keyed by id.
CoverDatum cover_from_json(const json& doc, const MarkedCombinatorics& source);

json to_json(const GCombinatorics& gc);
GCombinatorics gcomb_from_json(const json& doc);

json to_json(const CurveSpec& spec);
CurveSpec curvespec_from_json(const json& doc);

json to_json(const QTType& t);
QTType qttype_from_json(const json& doc);

json trace_to_json(const std::vector<RewriteSite>& trace);

json splitting_graph_to_json(const SplittingGraph& sg);

// DOT export for dpg / cmb / wgraph / gcomb / splitting-graph documents.
std::string export_dot(const json& doc);

std::string dump(const json& doc);  // canonical, 2-space indent, trailing newline

}  // namespace plumbcalc::io
