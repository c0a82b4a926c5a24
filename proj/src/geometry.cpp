#include "splb/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>

#include "splb/bell.hpp"
#include "splb/errors.hpp"
#include "splb/spline_space.hpp"

namespace splb {

namespace {

constexpr double kPi = 3.14159265358979323846;

// n + 1 Chebyshev-Lobatto points on [a, b], ascending.  Doubling n keeps all
// old points, which makes sampled sup-norms monotone under refinement.
std::vector<double> chebyshev_points(double a, double b, int n) {
  std::vector<double> pts(n + 1);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int k = 0; k <= n; ++k)
    pts[n - k] = mid + half * std::cos(kPi * k / n);
  return pts;
}

GeometryMap identity_map() {
  GeometryMap g;
  g.max_order = 6;
  g.eval = [](int, int, double x, double y, int d1, int d2, int comp) {
    if (d1 == 0 && d2 == 0)
      return comp == 1 ? x : y;
    if (comp == 1 && d1 == 1 && d2 == 0)
      return 1.0;
    if (comp == 2 && d1 == 0 && d2 == 1)
      return 1.0;
    return 0.0;
  };
  return g;
}

GeometryMap affine_map() {
  GeometryMap g;
  g.max_order = 6;
  g.eval = [](int, int, double x, double y, int d1, int d2, int comp) {
    constexpr double a11 = 1.2, a12 = 0.3, a21 = -0.1, a22 = 0.9;
    if (d1 == 0 && d2 == 0)
      return comp == 1 ? a11 * x + a12 * y + 0.25 : a21 * x + a22 * y - 0.5;
    if (d1 == 1 && d2 == 0)
      return comp == 1 ? a11 : a21;
    if (d1 == 0 && d2 == 1)
      return comp == 1 ? a12 : a22;
    return 0.0;
  };
  return g;
}

// C^1 biquadratic bulge: boundary control points reproduce the identity on
// the boundary, interior ones are pushed off the Greville grid.
GeometryMap quadratic_spline_map() {
  const KnotSequence ks({0.0, 0.5, 1.0});
  auto space = std::make_shared<SplineSpace>(ks, 2, 1);
  const std::array<double, 4> greville{0.0, 0.25, 0.75, 1.0};
  const std::array<double, 4> bump{0.0, 1.0, 1.0, 0.0};
  auto c1 = std::make_shared<std::array<std::array<double, 4>, 4>>();
  auto c2 = std::make_shared<std::array<std::array<double, 4>, 4>>();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      (*c1)[i][j] = greville[i] + 0.08 * bump[i] * bump[j];
      (*c2)[i][j] = greville[j] - 0.06 * bump[i] * bump[j];
    }

  GeometryMap g;
  g.part1 = ks;
  g.part2 = ks;
  g.max_order = 6;
  g.bent = true;
  g.eval = [space, c1, c2](int e1, int e2, double x, double y, int d1, int d2, int comp) {
    if (d1 > 2 || d2 > 2)
      return 0.0;
    const BasisValues bx = space->eval_basis_on_element(e1, x, d1);
    const BasisValues by = space->eval_basis_on_element(e2, y, d2);
    const auto& c = (comp == 1) ? *c1 : *c2;
    double v = 0;
    for (std::size_t i = 0; i < bx.values.size(); ++i)
      for (std::size_t j = 0; j < by.values.size(); ++j)
        v += bx.values[i] * by.values[j] * c[bx.first_index + i][by.first_index + j];
    return v;
  };
  return g;
}

} // namespace

double GeometryMap::det(int e1, int e2, double x, double y) const {
  const double g11 = eval(e1, e2, x, y, 1, 0, 1);
  const double g12 = eval(e1, e2, x, y, 0, 1, 1);
  const double g21 = eval(e1, e2, x, y, 1, 0, 2);
  const double g22 = eval(e1, e2, x, y, 0, 1, 2);
  return g11 * g22 - g12 * g21;
}

GeometryMap geometry_catalog(const std::string& id) {
  if (id == "identity")
    return identity_map();
  if (id == "affine")
    return affine_map();
  if (id == "quadratic-spline")
    return quadratic_spline_map();
  throw Error("unknown-id", "no built-in map named \"" + id + "\"");
}

double GeometryConstants::get(int direction, int j1, int j2) const {
  for (const GeometryConstantEntry& e : table)
    if (e.direction == direction && e.j1 == j1 && e.j2 == j2)
      return e.value;
  throw Error("invalid-data", "no tabulated entry for the requested index");
}

GeometryConstants geometry_constants(const GeometryMap& G, int r, const std::string& flavor, int resolution) {
  if (flavor != "global" && flavor != "mesh")
    throw Error("invalid-data", "flavor must be \"global\" or \"mesh\"");
  if (G.bent && flavor == "global")
    throw Error("norm-flavor", "a bent map only has mesh-dependent sup-norms");
  if (r < 1 || r > 8)
    throw Error("invalid-order", "derivative order must lie in [1, 8]");
  if (r > G.max_order)
    throw Error("missing-derivative", "map derivatives are not available up to the requested order");
  const int n = resolution > 0 ? resolution : G.samples_per_element;

  // Chain-rule terms per multi-index, shared across directions and samples.
  struct Term {
    FaaTerm powers;
    double coeff;
  };
  std::vector<GeometryConstantEntry> entries;
  std::vector<std::vector<Term>> terms;
  for (int j1 = 0; j1 <= r; ++j1)
    for (int j2 = 0; j1 + j2 <= r; ++j2) {
      if (j1 + j2 < 1)
        continue;
      for (int dir : {1, 2})
        entries.push_back({dir, j1, j2, 0.0});
      terms.emplace_back();
      for (const FaaTerm& k : faa_index_set(r, {j1, j2}))
        terms.back().push_back({k, faa_coefficient(r, 2, k)});
    }
  const std::size_t n_mixed_first = entries.size();
  if (r == 2)
    for (const auto [j1, j2] : {std::pair{1, 0}, {0, 1}, {2, 0}, {0, 2}, {1, 1}})
      entries.push_back({12, j1, j2, 0.0});

  double max_det = 0, min_det = 1e300;
  for (int e1 = 0; e1 < G.part1.n_elements(); ++e1)
    for (int e2 = 0; e2 < G.part2.n_elements(); ++e2) {
      const std::vector<double> xs = chebyshev_points(G.part1.breakpoint(e1), G.part1.breakpoint(e1 + 1), n);
      const std::vector<double> ys = chebyshev_points(G.part2.breakpoint(e2), G.part2.breakpoint(e2 + 1), n);
      for (double x : xs)
        for (double y : ys) {
          const double d = std::fabs(G.det(e1, e2, x, y));
          if (d < 1e-10)
            throw Error("degenerate-map", "Jacobian determinant vanishes at a sample point");
          max_det = std::max(max_det, d);
          min_det = std::min(min_det, d);

          // deriv[i][l][m - 1] = d^m/dx_i^m of component l + 1.
          double deriv[2][2][8];
          for (int m = 1; m <= r; ++m)
            for (int l = 0; l < 2; ++l) {
              deriv[0][l][m - 1] = G.eval(e1, e2, x, y, m, 0, l + 1);
              deriv[1][l][m - 1] = G.eval(e1, e2, x, y, 0, m, l + 1);
            }
          for (std::size_t t = 0; t < terms.size(); ++t)
            for (int i = 0; i < 2; ++i) {
              double sum = 0;
              for (const Term& term : terms[t]) {
                double prod = term.coeff;
                for (int m = 0; m < r; ++m)
                  for (int l = 0; l < 2; ++l)
                    for (int rep = 0; rep < term.powers[m * 2 + l]; ++rep)
                      prod *= deriv[i][l][m];
                sum += prod;
              }
              GeometryConstantEntry& e = entries[2 * t + i];
              e.value = std::max(e.value, std::fabs(sum));
            }
          if (r == 2) {
            const double g11 = deriv[0][0][0], g12 = deriv[0][1][0];
            const double g21 = deriv[1][0][0], g22 = deriv[1][1][0];
            const double m1 = G.eval(e1, e2, x, y, 1, 1, 1);
            const double m2 = G.eval(e1, e2, x, y, 1, 1, 2);
            const double vals[5] = {m1, m2, g11 * g21, g12 * g22, g11 * g22 + g21 * g12};
            for (int t = 0; t < 5; ++t) {
              GeometryConstantEntry& e = entries[n_mixed_first + t];
              e.value = std::max(e.value, std::fabs(vals[t]));
            }
          }
        }
    }

  GeometryConstants out;
  out.C_G = max_det / min_det;
  out.flavor = flavor;
  out.resolution = n;
  out.table = std::move(entries);
  return out;
}

} // namespace splb
