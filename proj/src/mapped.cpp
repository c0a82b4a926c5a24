#include "splb/mapped.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "splb/errors.hpp"
#include "splb/quadrature.hpp"

namespace splb {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_planar(const TensorSpace& tspace) {
  if (tspace.spaces.size() != 2)
    throw Error("invalid-order", "mapped projection handles exactly two directions");
}

// The space mesh must refine the map partition so that map kinks lie on knot
// lines of every projected spline.
void check_conforming(const GeometryMap& G, const TensorSpace& tspace) {
  for (int dir = 0; dir < 2; ++dir) {
    const std::vector<double>& part = (dir == 0 ? G.part1 : G.part2).breakpoints();
    const std::vector<double>& knots = tspace.spaces[dir].knots().breakpoints();
    for (double z : part) {
      bool found = false;
      for (double w : knots)
        found = found || std::fabs(w - z) <= 1e-12;
      if (!found)
        throw Error("nonconforming-partition", "map partition point off the knot lines");
    }
  }
}

// Spline derivative that is identically zero beyond the polynomial degree.
double seval(const TensorSpline& s, double x, double y, int d1, int d2) {
  if (d1 > s.space.spaces[0].degree() || d2 > s.space.spaces[1].degree())
    return 0.0;
  return s.eval(x, y, d1, d2);
}

struct MapPoint {
  double tx, ty;   // physical image
  double det;      // Jacobian determinant
  Eigen::Matrix2d J;
  Eigen::Matrix2d HG1, HG2;
};

MapPoint map_point(const GeometryMap& G, int e1, int e2, double x, double y, bool second) {
  MapPoint m;
  m.tx = G.eval(e1, e2, x, y, 0, 0, 1);
  m.ty = G.eval(e1, e2, x, y, 0, 0, 2);
  m.J(0, 0) = G.eval(e1, e2, x, y, 1, 0, 1);
  m.J(0, 1) = G.eval(e1, e2, x, y, 0, 1, 1);
  m.J(1, 0) = G.eval(e1, e2, x, y, 1, 0, 2);
  m.J(1, 1) = G.eval(e1, e2, x, y, 0, 1, 2);
  m.det = m.J.determinant();
  if (std::fabs(m.det) < 1e-10)
    throw Error("degenerate-map", "Jacobian determinant vanishes at a quadrature point");
  if (second) {
    m.HG1(0, 0) = G.eval(e1, e2, x, y, 2, 0, 1);
    m.HG1(0, 1) = m.HG1(1, 0) = G.eval(e1, e2, x, y, 1, 1, 1);
    m.HG1(1, 1) = G.eval(e1, e2, x, y, 0, 2, 1);
    m.HG2(0, 0) = G.eval(e1, e2, x, y, 2, 0, 2);
    m.HG2(0, 1) = m.HG2(1, 0) = G.eval(e1, e2, x, y, 1, 1, 2);
    m.HG2(1, 1) = G.eval(e1, e2, x, y, 0, 2, 2);
  }
  return m;
}

// Physical derivative of order (l1, l2), l_i <= 1, of the mapped spline at a
// parametric point.
double mapped_spline_derivative(const TensorSpline& s, const MapPoint& m, double x, double y, int l1, int l2) {
  if (l1 == 0 && l2 == 0)
    return s.eval(x, y, 0, 0);
  const Eigen::Matrix2d Jinv = m.J.inverse();
  const Eigen::Vector2d grad(s.eval(x, y, 1, 0), s.eval(x, y, 0, 1));
  const Eigen::Vector2d tgrad = Jinv.transpose() * grad;
  if (l1 + l2 == 1)
    return l1 == 1 ? tgrad(0) : tgrad(1);
  Eigen::Matrix2d Hs;
  Hs(0, 0) = seval(s, x, y, 2, 0);
  Hs(0, 1) = Hs(1, 0) = s.eval(x, y, 1, 1);
  Hs(1, 1) = seval(s, x, y, 0, 2);
  const Eigen::Matrix2d tH = Jinv.transpose() * (Hs - tgrad(0) * m.HG1 - tgrad(1) * m.HG2) * Jinv;
  return tH(0, 1);
}

PiecewiseRule direction_rule(const GeometryMap& G, const TensorSpace& tspace, int dir, int oversample) {
  const KnotSequence& part = dir == 0 ? G.part1 : G.part2;
  const std::vector<double> cuts = merge_cuts(tspace.spaces[dir].knots().breakpoints(), part.breakpoints());
  return composite_rule(cuts, tspace.spaces[dir].degree() + 1 + oversample);
}

} // namespace

TensorSpline mapped_project(const GeometryMap& G, const TensorSpace& tspace, const PhysicalTestFunction& u,
                            const std::string& kind, int oversample) {
  check_planar(tspace);
  check_conforming(G, tspace);
  if (kind != "l2" && kind != "ritz" && kind != "q")
    throw Error("invalid-data", "kind must be \"l2\", \"ritz\" or \"q\"");

  TensorTestFunction pullback;
  pullback.a1 = G.part1.a();
  pullback.b1 = G.part1.b();
  pullback.a2 = G.part2.a();
  pullback.b2 = G.part2.b();
  pullback.max_order = std::min(u.max_order, 1);
  const std::vector<double>& bp1 = G.part1.breakpoints();
  const std::vector<double>& bp2 = G.part2.breakpoints();
  pullback.breakpoints1.assign(bp1.begin() + 1, bp1.end() - 1);
  pullback.breakpoints2.assign(bp2.begin() + 1, bp2.end() - 1);
  pullback.eval = [&G, &u](double x, double y, int d1, int d2) {
    const int e1 = G.part1.element_of(x);
    const int e2 = G.part2.element_of(y);
    const MapPoint m = map_point(G, e1, e2, x, y, d1 + d2 >= 2);
    if (d1 == 0 && d2 == 0)
      return u.eval(m.tx, m.ty, 0, 0);
    const double ux = u.eval(m.tx, m.ty, 1, 0);
    const double uy = u.eval(m.tx, m.ty, 0, 1);
    if (d1 == 1 && d2 == 0)
      return ux * m.J(0, 0) + uy * m.J(1, 0);
    if (d1 == 0 && d2 == 1)
      return ux * m.J(0, 1) + uy * m.J(1, 1);
    const double uxx = u.eval(m.tx, m.ty, 2, 0);
    const double uxy = u.eval(m.tx, m.ty, 1, 1);
    const double uyy = u.eval(m.tx, m.ty, 0, 2);
    return uxx * m.J(0, 0) * m.J(0, 1) + uxy * (m.J(0, 0) * m.J(1, 1) + m.J(0, 1) * m.J(1, 0)) +
           uyy * m.J(1, 0) * m.J(1, 1) + ux * m.HG1(0, 1) + uy * m.HG2(0, 1);
  };

  if (kind == "l2")
    return tensor_l2_project(tspace, pullback, oversample);
  if (kind == "ritz")
    return tensor_ritz_project(tspace, pullback, oversample);
  return tensor_q_project(tspace, pullback, oversample);
}

double physical_seminorm(const GeometryMap& G, const TensorSpace& tspace, const PhysicalTestFunction& u,
                         int l1, int l2, int oversample) {
  check_planar(tspace);
  if (l1 > u.max_order || l2 > u.max_order)
    throw Error("missing-derivative", "derivative order exceeds the available smoothness");
  const PiecewiseRule r1 = direction_rule(G, tspace, 0, oversample);
  const PiecewiseRule r2 = direction_rule(G, tspace, 1, oversample);
  double acc = 0;
  for (std::size_t i = 0; i < r1.nodes.size(); ++i) {
    const int e1 = G.part1.element_of(r1.nodes[i]);
    for (std::size_t j = 0; j < r2.nodes.size(); ++j) {
      const int e2 = G.part2.element_of(r2.nodes[j]);
      const MapPoint m = map_point(G, e1, e2, r1.nodes[i], r2.nodes[j], false);
      const double v = u.eval(m.tx, m.ty, l1, l2);
      acc += r1.weights[i] * r2.weights[j] * v * v * std::fabs(m.det);
    }
  }
  return std::sqrt(acc);
}

double mapped_error_norm(const GeometryMap& G, const PhysicalTestFunction& u, const TensorSpline& s,
                         int l1, int l2, int oversample) {
  if (l1 < 0 || l1 > 1 || l2 < 0 || l2 > 1)
    throw Error("invalid-order", "physical derivatives are available up to order (1, 1)");
  if (l1 > u.max_order || l2 > u.max_order)
    throw Error("missing-derivative", "derivative order exceeds the available smoothness");
  const PiecewiseRule r1 = direction_rule(G, s.space, 0, oversample);
  const PiecewiseRule r2 = direction_rule(G, s.space, 1, oversample);
  const bool second = (l1 + l2 >= 2);
  double acc = 0;
  for (std::size_t i = 0; i < r1.nodes.size(); ++i) {
    const int e1 = G.part1.element_of(r1.nodes[i]);
    for (std::size_t j = 0; j < r2.nodes.size(); ++j) {
      const int e2 = G.part2.element_of(r2.nodes[j]);
      const MapPoint m = map_point(G, e1, e2, r1.nodes[i], r2.nodes[j], second);
      const double diff = u.eval(m.tx, m.ty, l1, l2) -
                          mapped_spline_derivative(s, m, r1.nodes[i], r2.nodes[j], l1, l2);
      acc += r1.weights[i] * r2.weights[j] * diff * diff * std::fabs(m.det);
    }
  }
  return std::sqrt(acc);
}

double mapped_bound(const GeometryMap& G, const TensorSpace& tspace, const PhysicalTestFunction& u,
                    int l1, int l2) {
  check_planar(tspace);
  if (l1 < 0 || l1 > 1 || l2 < 0 || l2 > 1)
    throw Error("invalid-order", "the bound covers derivative orders (0,0) through (1,1)");
  if (u.max_order < 2)
    throw Error("missing-derivative", "the bound needs second physical derivatives of the target");
  for (const SplineSpace& sp : tspace.spaces) {
    if (sp.degree() < 1)
      throw Error("invalid-order", "the bound needs degree at least 1");
    if (sp.smoothness() != sp.degree() - 1)
      throw Error("invalid-smoothness", "the bound holds for maximally smooth spaces");
  }
  const GeometryConstants gc = geometry_constants(G, 2, G.bent ? "mesh" : "global");
  const double h = std::max(tspace.spaces[0].knots().h(), tspace.spaces[1].knots().h());

  double sum = 0;
  for (const auto [j1, j2] : {std::pair{1, 0}, {0, 1}, {2, 0}, {0, 2}, {1, 1}}) {
    const double coeff = gc.get(1, j1, j2) + gc.get(2, j1, j2) + gc.get(12, j1, j2);
    sum += coeff * physical_seminorm(G, tspace, u, j1, j2);
  }
  return gc.C_G * std::pow(h / kPi, 2 - l1 - l2) * sum;
}

} // namespace splb
