#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plumbcalc/plumbing.hpp"

namespace plumbcalc {

struct BranchSpec {
  enum class Kind { Smooth, Cusp };
  Kind kind = Kind::Smooth;
  long long p = 1, q = 2;  // cusp exponents, 2 <= p < q coprime
  std::string tangent;     // symbolic tangent label; equal labels mean tangency
  std::string component;   // owning component id
};

struct SingularPointSpec {
  std::string id;
  std::vector<BranchSpec> branches;
};

struct CurveComponent {
  std::string id;
  long long degree = 1;
};

struct CurveSpec {
  std::vector<CurveComponent> components;
  std::vector<SingularPointSpec> points;
};

// Multiplicity sequence of the (p,q) cusp via the Euclidean algorithm on
// (q,p); the delta identity sum m(m-1)/2 = (p-1)(q-1)/2 is asserted.
std::vector<long long> multiplicity_sequence(long long p, long long q);

// Delta invariant of the full local curve at the point: branch deltas plus
// pairwise local intersection multiplicities.
long long delta_invariant(const SingularPointSpec& pt);
// Same, restricted to the branches of one component.
long long delta_invariant(const SingularPointSpec& pt, const std::string& component);
// Pairwise local intersection multiplicity of two branches at a common point.
long long branch_intersection(const BranchSpec& a, const BranchSpec& b);

struct BlowUpRecord {
  std::string point;        // singular point the center lies over
  std::string center;      // center id
  std::vector<std::pair<std::string, long long>> objects;  // (object id, multiplicity)
  std::string exceptional;  // new exceptional id
};

struct BlowUpHistory {
  std::vector<BlowUpRecord> records;
};

// Combinatorial type: loop-free plumbing graph with the strict-transform
// marking, genus and euler weights, and the blow-up history.
struct MarkedCombinatorics {
  DartGraph graph;
  std::vector<char> str;              // per vertex
  std::vector<long long> genus, euler;
  std::vector<std::string> over;      // exceptional -> singular point id; "" on Str
  BlowUpHistory history;
  std::vector<CurveComponent> components;
  std::vector<SingularPointSpec> points;

  int vertex_of(const std::string& id) const;
  bool is_str(int v) const { return str[v] != 0; }
  // View as a closed all-(+) decorated plumbing graph (Str marks dropped).
  DecoratedPlumbingGraph as_dpg() const;
};

struct BuildOptions {
  bool check_bezout = true;
};

// Minimal embedded resolution of one singular point: the local decorated
// graph (arrows named a1..an per branch) and the blow-up history.
std::pair<DecoratedPlumbingGraph, BlowUpHistory> resolve_singularity(const SingularPointSpec& pt);

MarkedCombinatorics build_combinatorics(const CurveSpec& spec, const BuildOptions& opt = {});

// Quasi-triangular type: three partitions of d.
struct QTType {
  std::vector<long long> p1, p2, p3;
};

long long qt_gcd_s(const QTType& t);                       // s = gcd(s1,s2,s3)
long long zariski_tuple_size(const QTType& t);             // floor(s/2) + 1
CurveSpec quasi_triangular_spec(const QTType& t);
MarkedCombinatorics build_quasi_triangular(const QTType& t);

// Local decorated graph at a singular point of a built combinatorics.
DecoratedPlumbingGraph local_graph_at(const MarkedCombinatorics& m, const std::string& point_id);

// Equivalence of marked combinatorics; returns a vertex map witness.
std::optional<std::vector<int>> cmb_equivalent(const MarkedCombinatorics& a,
                                               const MarkedCombinatorics& b);

}  // namespace plumbcalc
