#pragma once

#include <functional>
#include <string>

#include "splb/geometry.hpp"
#include "splb/tensor.hpp"

namespace splb {

/// Function on the physical image of a map; eval(tx, ty, d1, d2) returns the
/// mixed physical partial of order (d1, d2).
struct PhysicalTestFunction {
  int max_order = 0;
  std::function<double(double, double, int, int)> eval;
};

/// Projects the pullback of u onto the tensor space over the parametric
/// square; kind is "l2", "ritz" or "q".  The space partition must refine the
/// map partition so bent-map kinks stay on knot lines.
TensorSpline mapped_project(const GeometryMap& G, const TensorSpace& tspace, const PhysicalTestFunction& u,
                            const std::string& kind, int oversample = 4);

/// Physical L2 norm of the (l1, l2) physical derivative of u, computed by
/// parametric quadrature with the |det grad G| weight.
double physical_seminorm(const GeometryMap& G, const TensorSpace& tspace, const PhysicalTestFunction& u,
                         int l1, int l2, int oversample = 8);

/// Physical L2 norm of the (l1, l2) physical derivative of u - s, where the
/// physical derivatives of the parametric spline s come from the inverse
/// Jacobian (and, for second order, the map curvature correction).  Requires
/// l1 + l2 <= 1 per direction and l1, l2 <= 1.
double mapped_error_norm(const GeometryMap& G, const PhysicalTestFunction& u, const TensorSpline& s,
                         int l1, int l2, int oversample = 8);

/// Second-order bound on the (l1, l2) physical derivative of the mapped
/// projection error: C_G (h/pi)^(2-l1-l2) times the sum over first and
/// second physical derivatives of u weighted by the geometry constants.
/// Requires maximal smoothness k_i = p_i - 1 and p_i >= 1.
double mapped_bound(const GeometryMap& G, const TensorSpace& tspace, const PhysicalTestFunction& u,
                    int l1, int l2);

} // namespace splb
