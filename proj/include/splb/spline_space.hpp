#pragma once

#include <vector>

#include "splb/knots.hpp"

namespace splb {

/// Values of the basis functions (or a derivative of them) that can be
/// nonzero at a point: entries first_index .. first_index + p.
struct BasisValues {
  int first_index = 0;
  std::vector<double> values;
};

/// Univariate spline space of degree p and interior smoothness C^k on a
/// breakpoint sequence.  k = -1 gives splines that may jump at the interior
/// breakpoints.  The open extended knot vector repeats each endpoint p + 1
/// times and each interior breakpoint p - k times, so
/// dimension = n_interior * (p - k) + p + 1.
class SplineSpace {
public:
  SplineSpace(KnotSequence knots, int degree, int smoothness);

  const KnotSequence& knots() const { return knots_; }
  int degree() const { return p_; }
  int smoothness() const { return k_; }
  int dimension() const { return static_cast<int>(ext_.size()) - p_ - 1; }

  const std::vector<double>& extended_knots() const { return ext_; }

  /// Knot span index of element e: ext_[span] <= x < ext_[span + 1] on e.
  int span_of_element(int e) const { return p_ + e * (p_ - k_); }
  /// First basis index active on element e.
  int first_active(int e) const { return span_of_element(e) - p_; }

  /// Basis derivative values at x (order d, 0 <= d <= p).  Evaluation at an
  /// interior breakpoint takes the limit from the right; x == b uses the last
  /// element.
  BasisValues eval_basis(double x, int d = 0) const;

  /// Same, but forces the element, so breakpoint values are one-sided limits
  /// taken from within element e.  Requires z_e <= x <= z_{e+1}.
  BasisValues eval_basis_on_element(int e, double x, int d = 0) const;

  /// Space of derivatives on the same breakpoints: degree p - 1, smoothness
  /// k - 1.  Requires p >= 1 and k >= 0.
  SplineSpace derivative_space() const;
  /// Space of antiderivatives: degree p + 1, smoothness k + 1.
  SplineSpace antiderivative_space() const;

private:
  void eval_into(int span, double x, int d, BasisValues& out) const;

  KnotSequence knots_;
  int p_;
  int k_;
  std::vector<double> ext_;
};

} // namespace splb
