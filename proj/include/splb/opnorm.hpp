#pragma once

#include "splb/spline_space.hpp"

namespace splb {

/// Numerical estimate of the smallest constant C such that
/// ||u - Z u|| <= C ||d^r u|| for the L2 projector Z onto the space, obtained
/// as the largest weighted singular value of (I - Z) K^r, where K integrates
/// from the left endpoint.
struct ConstantEstimate {
  int t = 0;    ///< space index k + 1
  int r = 0;
  int grid = 0; ///< composite quadrature nodes actually used
  double value = 0;
};

/// Discretizes K as a lower-triangular quadrature matrix on a composite Gauss
/// grid (exact on piecewise polynomials of the subcell order), Z as the
/// discrete L2 projection onto the sampled basis, and returns the largest
/// singular value of (I - Z) K^r in the weighted metric.  Requires grid >= 200.
ConstantEstimate estimate_constant(const SplineSpace& space, int r, int grid = 400);

} // namespace splb
