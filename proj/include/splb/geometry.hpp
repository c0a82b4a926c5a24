#pragma once

#include <functional>
#include <string>
#include <vector>

#include "splb/knots.hpp"

namespace splb {

/// Planar map on the unit square.  eval(e1, e2, x, y, d1, d2, comp) is the
/// (d1, d2) mixed partial of component comp (1 or 2) at (x, y), one-sided
/// from within element (e1, e2) of the partition grid: bent maps have
/// derivatives that jump across element boundaries, smooth maps ignore the
/// element indices.
struct GeometryMap {
  KnotSequence part1 = KnotSequence({0.0, 1.0});
  KnotSequence part2 = KnotSequence({0.0, 1.0});
  int max_order = 0;
  bool bent = false;
  int samples_per_element = 12;
  std::function<double(int, int, double, double, int, int, int)> eval;

  /// Jacobian determinant at (x, y), one-sided from element (e1, e2).
  double det(int e1, int e2, double x, double y) const;
};

/// Built-in maps: "identity", "affine" (A x + b with det A = 1.11) and
/// "quadratic-spline" (a C^1 biquadratic bulge of the unit square that fixes
/// the boundary; bent, so sup-norms are mesh-dependent).
GeometryMap geometry_catalog(const std::string& id);

/// One sampled sup-norm entry: direction 1, 2, or 12 for the mixed second
/// derivative, with derivative multi-index (j1, j2) of the composed target.
struct GeometryConstantEntry {
  int direction;
  int j1;
  int j2;
  double value;
};

/// Derivative-transformation constants of a map.  C_G is the product of the
/// sup of |det grad G| and the sup of its reciprocal.
struct GeometryConstants {
  double C_G = 0;
  std::string flavor;
  int resolution = 0;
  std::vector<GeometryConstantEntry> table;

  double get(int direction, int j1, int j2) const;
};

/// Tabulates, for each direction i and multi-index j with 1 <= |j| <= r, the
/// sampled sup over the element grid of the chain-rule coefficient that
/// multiplies the j-th derivative when an r-th directional derivative is
/// pushed through the map.  Sampling uses nested Chebyshev points per element
/// (resolution intervals per direction and element; 0 takes the map default),
/// so refining the resolution never decreases an entry.  Mixed-direction
/// entries (direction 12) are tabulated for r = 2.  Bent maps require the
/// "mesh" flavor; sampled values are lower estimates of the true sup.
GeometryConstants geometry_constants(const GeometryMap& G, int r, const std::string& flavor = "global",
                                     int resolution = 0);

} // namespace splb
