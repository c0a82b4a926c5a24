#pragma once

#include <functional>
#include <vector>

#include "splb/spline_function.hpp"
#include "splb/spline_space.hpp"

namespace splb {

/// Tensor product of univariate spline spaces, one per direction.
struct TensorSpace {
  std::vector<SplineSpace> spaces;

  int dim() const {
    int n = 1;
    for (const auto& s : spaces)
      n *= s.dimension();
    return n;
  }
};

/// Bivariate target function; eval(x, y, d1, d2) returns the mixed partial
/// derivative of order (d1, d2).  max_order caps the per-direction order.
/// Interior kinks, if any, are listed per direction so quadrature can split.
struct TensorTestFunction {
  double a1 = 0, b1 = 1, a2 = 0, b2 = 1;
  int max_order = 0;
  std::function<double(double, double, int, int)> eval;
  std::vector<double> breakpoints1, breakpoints2;
};

/// Bivariate spline with coefficients in row-major order (direction-2 index
/// fastest).
struct TensorSpline {
  TensorSpace space;
  std::vector<double> coeffs;

  double coeff(int i, int j) const;
  double eval(double x, double y, int d1, int d2) const;
  /// Restriction to a boundary edge as a univariate spline in the running
  /// direction; side 0: x = a1, 1: x = b1, 2: y = a2, 3: y = b2.
  SplineFunction edge(int side) const;
};

/// L2-orthogonal projection onto the tensor space (values only).
TensorSpline tensor_l2_project(const TensorSpace& tspace, const TensorTestFunction& u, int oversample = 4);

/// Tensor product of the two univariate first-order energy projectors.
/// Requires p_i >= 1, k_i >= 0, and mixed first derivatives of u.
TensorSpline tensor_ritz_project(const TensorSpace& tspace, const TensorTestFunction& u, int oversample = 4);

/// Tensor product of the two univariate endpoint-anchored projectors;
/// interpolates u at the four corners and restricts on each boundary edge to
/// the univariate projection of the edge trace.  Same requirements as the
/// energy version.
TensorSpline tensor_q_project(const TensorSpace& tspace, const TensorTestFunction& u, int oversample = 4);

/// || d1^l1 d2^l2 (u - s) ||_{L2} over the rectangle, split at knots and at
/// the breakpoints of u.
double tensor_error_norm(const TensorTestFunction& u, const TensorSpline& s, int l1, int l2);

/// || d1^l1 d2^l2 u ||_{L2} with optional extra cut points per direction.
double tensor_function_norm(const TensorTestFunction& u, int l1, int l2,
                            const std::vector<double>& cuts1 = {}, const std::vector<double>& cuts2 = {},
                            int nodes_per_piece = 16);

/// || u - Z u || where Z applies the univariate L2 projector in the given
/// direction (0 or 1) only.
double partial_l2_error(const TensorSpace& tspace, const TensorTestFunction& u, int direction,
                        int oversample = 4);

/// L2 coefficients for any number of directions from a value evaluator; the
/// coefficient layout is row-major with the last direction fastest.
std::vector<double> tensor_l2_coefficients(const std::vector<SplineSpace>& spaces,
                                           const std::function<double(const std::vector<double>&)>& value,
                                           int oversample = 4);

} // namespace splb
