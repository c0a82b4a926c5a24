#include "splb/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "splb/errors.hpp"

namespace splb {

namespace {

// Legendre P_n and derivative at x by the three-term recurrence.
void legendre(int n, double x, double& pn, double& dpn) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    pn = p0;
    dpn = 0;
    return;
  }
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  pn = p1;
  dpn = n * (x * p1 - p0) / (x * x - 1.0);
}

} // namespace

GaussRule gauss_legendre(int n) {
  if (n < 1 || n > 64)
    throw Error("unsupported-rule", "Gauss-Legendre rule size must lie in [1, 64]");

  GaussRule rule;
  rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
  rule.weights.assign(static_cast<std::size_t>(n), 0.0);
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }

  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based initial guess for the i-th root in (0, 1].
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pn = 0, dpn = 0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, pn, dpn);
      const double dx = pn / dpn;
      x -= dx;
      if (std::abs(dx) < 1e-15)
        break;
    }
    legendre(n, x, pn, dpn);
    const double w = 2.0 / ((1.0 - x * x) * dpn * dpn);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1)
    rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

PiecewiseRule composite_rule(const std::vector<double>& cuts, int nodes_per_piece) {
  if (cuts.size() < 2)
    throw Error("invalid-domain", "composite rule needs at least one interval");
  const GaussRule g = gauss_legendre(nodes_per_piece);
  PiecewiseRule out;
  out.nodes.reserve((cuts.size() - 1) * static_cast<std::size_t>(nodes_per_piece));
  out.weights.reserve(out.nodes.capacity());
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
    const double hw = 0.5 * (cuts[c + 1] - cuts[c]);
    for (int i = 0; i < nodes_per_piece; ++i) {
      out.nodes.push_back(mid + hw * g.nodes[static_cast<std::size_t>(i)]);
      out.weights.push_back(hw * g.weights[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

std::vector<double> merge_cuts(const std::vector<double>& breakpoints, const std::vector<double>& extra) {
  std::vector<double> cuts = breakpoints;
  const double a = breakpoints.front(), b = breakpoints.back();
  for (double x : extra)
    if (x > a && x < b)
      cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

} // namespace splb
