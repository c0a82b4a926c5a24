#include "splb/multipatch.hpp"

#include <array>
#include <cmath>

#include "splb/errors.hpp"

namespace splb {

namespace {

const SplineSpace& edge_space(const Patch& p, int edge) {
  return p.space.spaces[edge < 2 ? 1 : 0];
}

// Parametric point on an edge at normalized running coordinate t in [0, 1].
std::array<double, 2> edge_point(const Patch& p, int edge, double t) {
  const KnotSequence& k1 = p.space.spaces[0].knots();
  const KnotSequence& k2 = p.space.spaces[1].knots();
  const double x = k1.a() + t * k1.length();
  const double y = k2.a() + t * k2.length();
  switch (edge) {
    case 0: return {k1.a(), y};
    case 1: return {k1.b(), y};
    case 2: return {x, k2.a()};
    default: return {x, k2.b()};
  }
}

std::array<double, 2> physical_point(const Patch& p, double x, double y) {
  const int e1 = p.map.part1.element_of(x);
  const int e2 = p.map.part2.element_of(y);
  return {p.map.eval(e1, e2, x, y, 0, 0, 1), p.map.eval(e1, e2, x, y, 0, 0, 2)};
}

GeometryMap translate_map(double dx) {
  GeometryMap g;
  g.max_order = 6;
  g.eval = [dx](int, int, double x, double y, int d1, int d2, int comp) {
    if (d1 == 0 && d2 == 0)
      return comp == 1 ? x + dx : y;
    if (comp == 1 && d1 == 1 && d2 == 0)
      return 1.0;
    if (comp == 2 && d1 == 0 && d2 == 1)
      return 1.0;
    return 0.0;
  };
  return g;
}

// (x, y) -> (x + 1, 1 - y): orientation-reversing, |det| = 1.
GeometryMap flipped_translate_map() {
  GeometryMap g;
  g.max_order = 6;
  g.eval = [](int, int, double x, double y, int d1, int d2, int comp) {
    if (d1 == 0 && d2 == 0)
      return comp == 1 ? x + 1.0 : 1.0 - y;
    if (comp == 1 && d1 == 1 && d2 == 0)
      return 1.0;
    if (comp == 2 && d1 == 0 && d2 == 1)
      return -1.0;
    return 0.0;
  };
  return g;
}

GeometryMap shifted(GeometryMap base, double dx) {
  auto inner = base.eval;
  base.eval = [inner, dx](int e1, int e2, double x, double y, int d1, int d2, int comp) {
    double v = inner(e1, e2, x, y, d1, d2, comp);
    if (comp == 1 && d1 == 0 && d2 == 0)
      v += dx;
    return v;
  };
  return base;
}

} // namespace

MultiPatch build_multipatch(std::vector<Patch> patches, std::vector<Interface> interfaces) {
  const int np = static_cast<int>(patches.size());
  for (const Interface& itf : interfaces) {
    if (itf.patch_a < 0 || itf.patch_a >= np || itf.patch_b < 0 || itf.patch_b >= np ||
        itf.edge_a < 0 || itf.edge_a > 3 || itf.edge_b < 0 || itf.edge_b > 3)
      throw Error("invalid-multipatch", "interface refers to a missing patch or edge");
    const Patch& pa = patches[itf.patch_a];
    const Patch& pb = patches[itf.patch_b];
    const SplineSpace& sa = edge_space(pa, itf.edge_a);
    const SplineSpace& sb = edge_space(pb, itf.edge_b);
    if (sa.degree() != sb.degree() || sa.smoothness() != sb.smoothness())
      throw Error("invalid-multipatch", "edge spaces differ in degree or smoothness");
    const std::vector<double>& za = sa.knots().breakpoints();
    const std::vector<double>& zb = sb.knots().breakpoints();
    if (za.size() != zb.size())
      throw Error("invalid-multipatch", "edge spaces differ in breakpoint count");
    const std::size_t m = zb.size();
    for (std::size_t i = 0; i < m; ++i) {
      const double expect = itf.reversed ? zb.front() + zb.back() - zb[m - 1 - i] : zb[i];
      if (std::fabs(za[i] - expect) > 1e-12)
        throw Error("invalid-multipatch", "edge breakpoints do not match");
    }
    for (int s = 0; s <= 32; ++s) {
      const double t = s / 32.0;
      const std::array<double, 2> qa = edge_point(pa, itf.edge_a, t);
      const std::array<double, 2> qb = edge_point(pb, itf.edge_b, itf.reversed ? 1.0 - t : t);
      const std::array<double, 2> xa = physical_point(pa, qa[0], qa[1]);
      const std::array<double, 2> xb = physical_point(pb, qb[0], qb[1]);
      if (std::hypot(xa[0] - xb[0], xa[1] - xb[1]) > 1e-10)
        throw Error("invalid-multipatch", "patch parameterizations disagree along an interface");
    }
  }
  return MultiPatch{std::move(patches), std::move(interfaces)};
}

MultiPatch multipatch_catalog(const std::string& id, int n_interior, int degree) {
  if (degree < 1)
    throw Error("invalid-order", "patch spaces need degree at least 1");
  if (n_interior < 0)
    throw Error("invalid-data", "interior breakpoint count must be nonnegative");
  const KnotSequence ks = uniform_knots(0.0, 1.0, n_interior);
  const SplineSpace uni(ks, degree, degree - 1);
  const TensorSpace space{{uni, uni}};

  if (id == "two-patch-square")
    return build_multipatch({{translate_map(0.0), space}, {translate_map(1.0), space}},
                            {{0, 1, 1, 0, false}});
  if (id == "two-patch-reversed")
    return build_multipatch({{translate_map(0.0), space}, {flipped_translate_map(), space}},
                            {{0, 1, 1, 0, true}});
  if (id == "two-patch-bent") {
    const GeometryMap bulge = geometry_catalog("quadratic-spline");
    return build_multipatch({{bulge, space}, {shifted(bulge, 1.0), space}}, {{0, 1, 1, 0, false}});
  }
  throw Error("unknown-id", "no built-in layout named \"" + id + "\"");
}

std::vector<TensorSpline> multipatch_q_project(const MultiPatch& mp, const std::vector<PhysicalTestFunction>& u) {
  if (u.size() != mp.patches.size())
    throw Error("invalid-data", "need one evaluator per patch");
  std::vector<TensorSpline> out;
  out.reserve(mp.patches.size());
  for (std::size_t i = 0; i < mp.patches.size(); ++i)
    out.push_back(mapped_project(mp.patches[i].map, mp.patches[i].space, u[i], "q"));
  return out;
}

} // namespace splb
