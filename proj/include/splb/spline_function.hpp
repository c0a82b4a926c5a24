#pragma once

#include <vector>

#include "splb/spline_space.hpp"

namespace splb {

/// Spline in a SplineSpace, stored by its B-spline coefficients.
struct SplineFunction {
  SplineFunction(SplineSpace space, std::vector<double> coefficients);

  const SplineSpace& space() const { return space_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  std::vector<double>& coefficients() { return coeffs_; }

  /// Derivative of order d at x (right limit at interior breakpoints).
  double eval(double x, int d = 0) const;
  /// One-sided evaluation from within element e.
  double eval_on_element(int e, double x, int d = 0) const;

  SplineFunction derivative() const;
  /// Antiderivative vanishing at the left endpoint, in the degree-(p+1) space.
  SplineFunction antiderivative() const;

private:
  SplineSpace space_;
  std::vector<double> coeffs_;
};

/// Exact coefficients of the polynomial sum_i c_i x^i (monomial coefficients,
/// degree <= p) in the B-spline basis of the space, via the de Boor-Fix dual
/// functionals.  No quadrature is involved.
SplineFunction embed_polynomial(const SplineSpace& space, const std::vector<double>& monomial_coeffs);

/// The same spline on the refinement of its breakpoint sequence by one extra
/// breakpoint (inserted with full interior multiplicity p - k, so degree and
/// smoothness class are preserved).  zeta must lie strictly inside an element.
SplineFunction insert_breakpoint(const SplineFunction& f, double zeta);

} // namespace splb
