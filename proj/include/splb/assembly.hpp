#pragma once

#include <Eigen/Dense>

#include "splb/banded.hpp"
#include "splb/quadrature.hpp"
#include "splb/spline_space.hpp"
#include "splb/test_function.hpp"

namespace splb {

/// Gram matrix of the derivative-l basis, (d^l B_i, d^l B_j).  Requires
/// 0 <= l <= min(p, k + 1) so that the bilinear form is conforming; the
/// integrand is then a piecewise polynomial and the per-element (p + 1)-point
/// Gauss rule is exact.  Symmetric to the last bit by construction.
BandedSymMatrix assemble_gram(const SplineSpace& space, int l);

/// Load vector (d^l u, d^l B_i).  Elements are split at the breakpoints of u
/// and each piece uses p + 1 + oversample Gauss points.
Eigen::VectorXd assemble_load(const SplineSpace& space, const TestFunction& u, int l, int oversample = 4);

/// Moments (B_i, g_j) against the shifted Legendre polynomials g_0..g_{m-1}
/// on (a, b).  Rows are constraint rows for saddle-point projections.
Eigen::MatrixXd legendre_moment_rows(const SplineSpace& space, int m);

/// Moments (u, g_j), j = 0..m-1, same polynomials.  extra_cuts (typically the
/// knot breakpoints) are merged with the breakpoints of u.
Eigen::VectorXd legendre_moments(const TestFunction& u, int m, const std::vector<double>& extra_cuts = {},
                                 int oversample = 8);

/// Exact integrals (B_i, 1) = (T_{i+p+1} - T_i) / (p + 1).
Eigen::VectorXd basis_integrals(const SplineSpace& space);

/// Shifted Legendre value: P_deg mapped from [-1, 1] to [a, b].
double shifted_legendre(int deg, double a, double b, double x);

} // namespace splb
