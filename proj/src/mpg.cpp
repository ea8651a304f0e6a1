#include "plumbcalc/mpg.hpp"

namespace plumbcalc {

Mat2 column_hermite(const Mat2& m) {
  // Column operations only; result [[c,0],[b,a]] with c > 0, a > 0, 0 <= b < a
  // whenever the matrix is nonsingular.
  Int c0r0 = m(0, 0), c0r1 = m(1, 0);
  Int c1r0 = m(0, 1), c1r1 = m(1, 1);
  // Euclid on the top row to clear entry (0,1).
  while (c1r0 != 0) {
    Int q = c0r0 / c1r0;  // truncated
    c0r0 -= q * c1r0;
    c0r1 -= q * c1r1;
    std::swap(c0r0, c1r0);
    std::swap(c0r1, c1r1);
  }
  if (c0r0 < 0) { c0r0 = -c0r0; c0r1 = -c0r1; }
  if (c1r1 < 0) { c1r1 = -c1r1; }
  if (c1r1 != 0) {
    Int b = c0r1 % c1r1;
    if (b < 0) b += c1r1;
    c0r1 = b;
  }
  Mat2 h;
  h(0, 0) = c0r0; h(0, 1) = 0;
  h(1, 0) = c0r1; h(1, 1) = c1r1;
  return h;
}

Mat2 normalize_covering(const Mat2& m) {
  Mat2 h = column_hermite(m);
  if (h(0, 0) <= 0 || h(1, 1) <= 0)
    throw GraphError("covering matrix is singular");
  return h;
}

void validate_mpg(const ModifiedPlumbingGraph& g, bool require_connected) {
  validate_dpg(g.base, require_connected);
  if (!g.base.boundary_vertices().empty())
    throw GraphError("modified plumbing graph must have no boundary vertices");
  if (!g.base.all_plus())
    throw GraphError("modified plumbing graph must have all (+) edges");
  if (static_cast<int>(g.m.size()) != g.base.graph.dart_count())
    throw GraphError("m map size mismatch");
  for (int d = 0; d < g.base.graph.dart_count(); ++d) {
    const Mat2& m = g.m[d];
    if (m(0, 1) != 0 || m(0, 0) <= 0 || m(1, 1) <= 0 || m(1, 0) < 0 || m(1, 0) >= m(1, 1))
      throw GraphError("m(" + g.base.graph.dart_id(d) + ") is not of shape [[c,0],[b,a]] with 0<=b<a, c>0");
  }
  for (int e = 0; e < g.base.graph.edge_count(); ++e) {
    int y = DartGraph::representative(e);
    Mat2 lhs = column_hermite(g.m[y]);
    Mat2 rhs = column_hermite(Mat2::J() * g.m[DartGraph::involution(y)]);
    if (!(lhs == rhs))
      throw GraphError("column lattices of m(y) and J m(ybar) differ on edge " +
                       g.base.graph.edge_id(e));
  }
}

Mat2 gluing_matrix(const ModifiedPlumbingGraph& g, int dart) {
  const Mat2& my = g.m[dart];
  Mat2 rhs = Mat2::J() * g.m[DartGraph::involution(dart)];
  Int det = my.det();
  if (det == 0) throw GraphError("singular m(y)");
  Mat2 num = my.adj() * rhs;
  Mat2 r;
  for (int i = 0; i < 4; ++i) {
    if (num.a[i] % det != 0)
      throw GraphError("R_y is not integral; invalid m-assignment on dart " +
                       g.base.graph.dart_id(dart));
    r.a[i] = num.a[i] / det;
  }
  if (r.det() != -1)
    throw GraphError("det R_y != -1 on dart " + g.base.graph.dart_id(dart));
  return r;
}

}  // namespace plumbcalc
