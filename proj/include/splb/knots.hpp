#pragma once

#include <vector>

namespace splb {

/// Strictly increasing breakpoint sequence a = z_0 < z_1 < ... < z_M = b.
/// The quantities h, h_min and h_hat are the mesh widths used throughout the
/// error estimates; h_hat doubles the first and last interval before taking
/// the maximum.
class KnotSequence {
public:
  explicit KnotSequence(std::vector<double> breakpoints);

  double a() const { return z_.front(); }
  double b() const { return z_.back(); }
  double length() const { return b() - a(); }

  int n_elements() const { return static_cast<int>(z_.size()) - 1; }
  /// Number of interior breakpoints.
  int n_interior() const { return static_cast<int>(z_.size()) - 2; }

  const std::vector<double>& breakpoints() const { return z_; }
  double breakpoint(int i) const { return z_[static_cast<std::size_t>(i)]; }

  double h() const { return h_; }
  double h_min() const { return h_min_; }
  double h_hat() const { return h_hat_; }

  /// Index of the element containing x; x == b maps to the last element.
  int element_of(double x) const;

private:
  std::vector<double> z_;
  double h_ = 0, h_min_ = 0, h_hat_ = 0;
};

/// N equispaced interior breakpoints on (a, b), i.e. N + 2 breakpoints total.
KnotSequence uniform_knots(double a, double b, int n_interior);

} // namespace splb
