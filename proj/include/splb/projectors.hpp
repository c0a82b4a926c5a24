#pragma once

#include "splb/assembly.hpp"
#include "splb/spline_function.hpp"
#include "splb/test_function.hpp"

namespace splb {

struct ProjectionResult {
  SplineFunction spline;
  /// Galerkin residual of the defining equations, relative to the load norm.
  double orthogonality_residual = 0;
  /// Residual of the side constraints (zero when there are none).
  double constraint_residual = 0;
  double condition_estimate = 1;
};

/// L2-orthogonal projection onto the space.
ProjectionResult l2_project(const SplineSpace& space, const TestFunction& u, int oversample = 4);

/// Ritz projection of order q: (d^q Ru, d^q v) = (d^q u, d^q v) for all v in
/// the space, with moments against polynomials of degree < q fixed.  q = 0 is
/// the L2 projection.  Requires q <= k + 1 and q <= u.max_order.
ProjectionResult ritz_project(const SplineSpace& space, const TestFunction& u, int q, int oversample = 4);

/// First-order commuting projection: u(a) plus the antiderivative of the L2
/// projection of u' onto the derivative space.  Requires p >= 1, k >= 0.
/// Interpolates u at both endpoints.
ProjectionResult q_project(const SplineSpace& space, const TestFunction& u, int oversample = 4);

/// || d^l (u - s) ||_{L2} by Gauss quadrature with p + 1 + 8 points per piece,
/// split at the knots and at the breakpoints of u.
double error_norm(const TestFunction& u, const SplineFunction& s, int l = 0);

/// || d^l u ||_{L2(a,b)} by the same rule (s = 0), with cuts at breakpoints
/// and the given extra cut points.
double function_norm(const TestFunction& u, int l, const std::vector<double>& extra_cuts = {},
                     int nodes_per_piece = 16);

} // namespace splb
