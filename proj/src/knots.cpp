#include "splb/knots.hpp"

#include <algorithm>
#include <cmath>

#include "splb/errors.hpp"

namespace splb {

KnotSequence::KnotSequence(std::vector<double> breakpoints) : z_(std::move(breakpoints)) {
  if (z_.size() < 2)
    throw Error("invalid-domain", "need at least two breakpoints");
  for (double z : z_)
    if (!std::isfinite(z))
      throw Error("invalid-domain", "breakpoints must be finite");
  for (std::size_t i = 0; i + 1 < z_.size(); ++i)
    if (!(z_[i] < z_[i + 1]))
      throw Error("invalid-domain", "breakpoints must be strictly increasing");

  h_ = 0;
  h_min_ = z_.back() - z_.front();
  h_hat_ = 0;
  const std::size_t m = z_.size() - 1;
  for (std::size_t i = 0; i < m; ++i) {
    const double d = z_[i + 1] - z_[i];
    h_ = std::max(h_, d);
    h_min_ = std::min(h_min_, d);
    const double dd = (i == 0 || i == m - 1) ? 2 * d : d;
    h_hat_ = std::max(h_hat_, dd);
  }
}

int KnotSequence::element_of(double x) const {
  if (x < a() || x > b())
    throw Error("out-of-domain", "point outside the knot interval");
  // Half-open elements [z_i, z_{i+1}); the last element also owns b.
  auto it = std::upper_bound(z_.begin(), z_.end(), x);
  int e = static_cast<int>(it - z_.begin()) - 1;
  return std::min(e, n_elements() - 1);
}

KnotSequence uniform_knots(double a, double b, int n_interior) {
  if (!(a < b))
    throw Error("invalid-domain", "need a < b");
  if (n_interior < 0)
    throw Error("invalid-domain", "interior breakpoint count must be nonnegative");
  std::vector<double> z(static_cast<std::size_t>(n_interior) + 2);
  const int m = n_interior + 1;
  for (int i = 0; i <= m; ++i)
    z[static_cast<std::size_t>(i)] = a + (b - a) * static_cast<double>(i) / m;
  z.front() = a;
  z.back() = b;
  return KnotSequence(std::move(z));
}

} // namespace splb
