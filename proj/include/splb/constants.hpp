#pragma once

#include <string>
#include <vector>

namespace splb {

/// A bound assembled from several valid candidates; minimum is the value to
/// use.  argmin names the winning candidate, or "tie" when the smallest two
/// agree to relative 1e-15 (the h-dependent candidate is then reported as the
/// value, which is stable under refinement).
struct BoundBreakdown {
  std::vector<std::pair<std::string, double>> candidates;
  double minimum = 0;
  std::string argmin;
  /// Optional named predicates, e.g. whether a simplified candidate is
  /// guaranteed sharper than another for these parameters.
  std::vector<std::pair<std::string, bool>> flags;
};

/// (L/2)^r * sqrt((p+1-r)! / (p+1+r)!): L2 error constant of the L2
/// projection onto polynomials of degree p on an interval of length L,
/// measured against the r-th derivative.  Requires p >= r - 1; r = 0 gives 1.
double poly_constant(int p, int r, double length);

/// Mesh-independent constant c_{p,k,r}: the projection error of the smoothness
/// C^k spline space of degree p is at most c_{p,k,r} h^r times the r-th
/// derivative norm.  Maximal smoothness k = p - 1 gives (1/pi)^r.
double c_pkr(int p, int k, int r);

/// min(c_{p,k,r} h^r, poly_constant(p, r, L)) with the full breakdown.
/// Requires p >= max(r - 1, k + 1).
BoundBreakdown projection_bound(double h, int p, int k, int r, double length);

/// Bound candidates for the maximally smooth space (k = p - 1):
///   "projection" = projection_bound minimum (min of (h/pi)^r and the
///                  polynomial constant),
///   "product"    = stepwise product of first-order projection bounds,
///   "harmonic"   = (2 e h L / (e pi L + 4 h (p+1)))^r,
///   "small-r"    = (2 h L / (pi L + 2 h (p-r+2)))^r.
/// Each candidate is a valid bound on its own.  The flag
/// "small-r-sharper-than-harmonic" reports p > e/(e-2) (r + 2/e - 2), the
/// regime where the small-r candidate beats the harmonic one.
BoundBreakdown max_smooth_bounds(double h, int p, int r, double length);

/// (e h / (4 (p - k)))^r: closed form dominating c_{p,k,r} h^r.  Requires
/// k <= p - 2 and r <= p + 1; for maximal smoothness use max_smooth_bounds.
double simplified_bound(double h, int p, int k, int r);

/// Energy-projection bound of order q measured in the l-th derivative:
/// candidates "product" = C_{h,p-q,k-q,q-l} * C_{h,p-q,k-q,r-q} and
/// "simplified" = (e h / (4 (p - k)))^{r-l}.
/// Requires 0 <= l <= q <= min(k + 1, r) and p >= max(q, r - 1, 2q - l - 1).
BoundBreakdown ritz_bound(double h, int p, int k, int q, int l, int r, double length);

/// Boundary-reduced spline spaces: parity 0 constrains even endpoint
/// derivatives, parity 1 odd ones; the strict variant constrains orders up to
/// p, the relaxed ("bar") variant up to p - 1.
enum class ReducedVariant { strict, relaxed };

struct ReducedBound {
  double value = 0;
  /// "h" or "h-hat": which mesh width enters value = width / pi.
  std::string width;
};

/// First-order energy projection error constant on the reduced space:
/// width/pi with width h or h-hat according to the parity of p for the strict
/// variant, always h for the relaxed variant.
ReducedBound reduced_bound(int parity, ReducedVariant variant, int p, double h, double h_hat);

/// Mesh width where the h-power candidate (h/pi)^r crosses the global
/// polynomial constant; for h above it the polynomial candidate wins.
double crossover_h(int p, int r, double length);

/// c_{p,k,r} (p - k)^r: constant per degree of freedom at fixed resolution.
double dof_constant(int p, int k, int r);

/// Energy-projection analogue: c_{p-q,k-q,q-l} c_{p-q,k-q,r-q} (p-k)^{r-l}.
double ritz_dof_constant(int p, int k, int r, int q, int l);

/// Relative mismatch of the product identity
/// c_{p-q,k-q,q-l} * c_{p-q,k-q,p+1-q} = c_{p-l,k-l,p+1-l},
/// valid for max(q - 1, 2q - l - 2) <= k <= p - 1.
double check_identity(int p, int k, int q, int l);

/// Precomputed constant tables (see README): 1 = dof constants at r = 3,
/// 2 = dof constants at r = p + 1, 3 = energy-projection dof constants at
/// r = p + 1, q = 1, 4 = crossover widths relative to the domain length.
struct FigureTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

FigureTable figure_table(int id);

} // namespace splb
