#pragma once

#include <vector>

namespace splb {

/// Gauss-Legendre rule on [-1, 1]: symmetric nodes, positive weights,
/// exact for polynomials of degree 2n - 1.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n in [1, 64].
GaussRule gauss_legendre(int n);

/// Composite rule: the given rule mapped to each interval of a sorted cut
/// sequence c_0 < c_1 < ... < c_m.
struct PiecewiseRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

PiecewiseRule composite_rule(const std::vector<double>& cuts, int nodes_per_piece);

/// Sorted union of the knot breakpoints with extra interior cut points
/// (duplicates and points outside (a, b) are dropped).
std::vector<double> merge_cuts(const std::vector<double>& breakpoints, const std::vector<double>& extra);

} // namespace splb
