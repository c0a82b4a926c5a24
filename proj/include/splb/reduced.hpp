#pragma once

#include <vector>

#include "splb/constants.hpp"
#include "splb/projectors.hpp"
#include "splb/spline_space.hpp"
#include "splb/test_function.hpp"

namespace splb {

/// Subspace of a maximally smooth spline space cut out by homogeneous
/// endpoint-derivative conditions: parity 0 forces the even-order derivatives
/// to vanish at both endpoints, parity 1 the odd-order ones; the strict
/// variant constrains orders up to the degree, the relaxed variant stops one
/// order earlier.  Columns of the basis change are orthonormal.
struct ReducedSpace {
  SplineSpace space;
  int parity = 0;
  ReducedVariant variant = ReducedVariant::strict;
  int m = 0; ///< reduced dimension
  std::vector<double> basis_change; ///< dimension x m, row-major

  double basis_entry(int row, int col) const { return basis_change[static_cast<std::size_t>(row) * m + col]; }
};

/// Requires maximal smoothness k = p - 1.  Throws empty-space when the
/// conditions annihilate the whole space.
ReducedSpace build_reduced_space(const SplineSpace& space, int parity, ReducedVariant variant);

/// The spline with the given reduced coefficients.
SplineFunction member(const ReducedSpace& reduced, const std::vector<double>& coeffs);

/// First-order energy projection onto the reduced space: derivative
/// orthogonality on the reduced basis; parity 0 requires u(a) = u(b) = 0,
/// parity 1 adds the matching-mean constraint.  Requires p >= 1.
ProjectionResult ritz_reduced(const ReducedSpace& reduced, const TestFunction& u);

} // namespace splb
