#include "splb/constants.hpp"

#include <algorithm>
#include <cmath>

#include "splb/errors.hpp"

namespace splb {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;

// log(a! / b!) for nonnegative integers, safe far beyond the overflow range
// of the factorials themselves.
double log_factorial_ratio(int a, int b) { return std::lgamma(a + 1.0) - std::lgamma(b + 1.0); }

void require(bool ok, const char* reason, const char* what) {
  if (!ok)
    throw Error(reason, what);
}

// Builds the breakdown; prefer_on_tie flags candidates whose value should be
// reported when the minimum is attained twice (within 1e-15 relative).
BoundBreakdown finish(std::vector<std::pair<std::string, double>> cands, const std::vector<bool>& prefer_on_tie) {
  BoundBreakdown out;
  out.candidates = std::move(cands);
  std::size_t best = 0;
  for (std::size_t i = 1; i < out.candidates.size(); ++i)
    if (out.candidates[i].second < out.candidates[best].second)
      best = i;
  out.minimum = out.candidates[best].second;
  out.argmin = out.candidates[best].first;
  for (std::size_t i = 0; i < out.candidates.size(); ++i) {
    if (i == best)
      continue;
    const double vi = out.candidates[i].second, vb = out.minimum;
    if (std::abs(vi - vb) <= 1e-15 * std::max(std::abs(vi), std::abs(vb))) {
      out.argmin = "tie";
      for (std::size_t j = 0; j < out.candidates.size(); ++j) {
        const double vj = out.candidates[j].second;
        if (prefer_on_tie[j] && std::abs(vj - vb) <= 1e-15 * std::max(std::abs(vj), std::abs(vb))) {
          out.minimum = vj;
          break;
        }
      }
      break;
    }
  }
  return out;
}

} // namespace

double poly_constant(int p, int r, double length) {
  require(length > 0, "invalid-domain", "interval length must be positive");
  require(r >= 0, "invalid-order", "derivative order must be nonnegative");
  if (r == 0)
    return 1.0;
  require(p >= r - 1, "invalid-order", "polynomial constant needs p >= r - 1");
  return std::exp(r * std::log(0.5 * length) + 0.5 * log_factorial_ratio(p + 1 - r, p + 1 + r));
}

double c_pkr(int p, int k, int r) {
  require(p >= 0, "invalid-order", "degree must be nonnegative");
  require(k >= -1 && k <= p - 1, "invalid-smoothness", "smoothness must lie in [-1, p - 1]");
  require(r >= 0, "invalid-order", "derivative order must be nonnegative");
  if (r == 0)
    return 1.0;
  require(p >= r - 1, "invalid-order", "spline constant needs p >= r - 1");
  if (k == p - 1)
    return std::exp(-r * std::log(kPi));
  const double log_base = std::log(static_cast<double>(p - k)) + std::log(static_cast<double>(p - k + 1));
  if (k >= r - 2)
    return std::exp(-r * std::log(2.0) - 0.5 * r * log_base);
  return std::exp(-r * std::log(2.0) - 0.5 * (k + 1) * log_base +
                  0.5 * log_factorial_ratio(p + 1 - r, p - 1 + r - 2 * k));
}

BoundBreakdown projection_bound(double h, int p, int k, int r, double length) {
  require(h > 0 && h <= length, "invalid-domain", "need 0 < h <= length");
  require(p >= std::max(r - 1, k + 1), "invalid-order", "projection bound needs p >= max(r - 1, k + 1)");
  const double spline = c_pkr(p, k, r) * std::pow(h, r);
  const double poly = poly_constant(p, r, length);
  return finish({{"spline", spline}, {"polynomial", poly}}, {true, false});
}

BoundBreakdown max_smooth_bounds(double h, int p, int r, double length) {
  require(h > 0 && h <= length, "invalid-domain", "need 0 < h <= length");
  require(r >= 0, "invalid-order", "derivative order must be nonnegative");
  require(p >= std::max(r - 1, 0), "invalid-order", "maximal-smoothness bounds need p >= r - 1");

  const double projection = projection_bound(h, p, p - 1, r, length).minimum;
  double product = 1.0;
  for (int i = 0; i < r; ++i)
    product *= std::min(h / kPi, poly_constant(p - i, 1, length));
  const double harmonic = std::pow(2 * kE * h * length / (kE * kPi * length + 4 * h * (p + 1)), r);
  const double small_r = std::pow(2 * h * length / (kPi * length + 2 * h * (p - r + 2)), r);

  BoundBreakdown out = finish({{"projection", projection},
                               {"product", product},
                               {"harmonic", harmonic},
                               {"small-r", small_r}},
                              {true, true, true, true});
  out.flags.push_back({"small-r-sharper-than-harmonic", p > kE / (kE - 2.0) * (r + 2.0 / kE - 2.0)});
  return out;
}

double simplified_bound(double h, int p, int k, int r) {
  require(h > 0, "invalid-domain", "mesh width must be positive");
  require(r >= 0 && p >= r - 1, "invalid-order", "need 0 <= r <= p + 1");
  require(k >= -1 && k <= p - 2, "invalid-smoothness",
          "smoothness must lie in [-1, p - 2]; use max_smooth_bounds for k = p - 1");
  return std::pow(kE * h / (4.0 * (p - k)), r);
}

BoundBreakdown ritz_bound(double h, int p, int k, int q, int l, int r, double length) {
  require(l >= 0 && l <= q, "invalid-order", "need 0 <= l <= q");
  require(k >= -1 && k <= p - 1, "invalid-smoothness", "smoothness must lie in [-1, p - 1]");
  require(q <= k + 1, "nonconforming-order", "projection order exceeds the conforming range k + 1");
  require(q <= r, "invalid-order", "need q <= r");
  require(p >= std::max({q, r - 1, 2 * q - l - 1}), "invalid-order",
          "energy bound needs p >= max(q, r - 1, 2q - l - 1)");
  const double product =
      projection_bound(h, p - q, k - q, q - l, length).minimum * projection_bound(h, p - q, k - q, r - q, length).minimum;
  const double simplified = std::pow(kE * h / (4.0 * (p - k)), r - l);
  return finish({{"product", product}, {"simplified", simplified}}, {true, false});
}

ReducedBound reduced_bound(int parity, ReducedVariant variant, int p, double h, double h_hat) {
  require(parity == 0 || parity == 1, "invalid-data", "parity must be 0 (even) or 1 (odd)");
  require(p >= 0, "invalid-order", "degree must be nonnegative");
  require(h > 0 && h_hat >= h, "invalid-domain", "need 0 < h <= h_hat");
  ReducedBound out;
  bool wide = false;
  if (variant == ReducedVariant::strict) {
    const bool p_odd = (p % 2 != 0);
    wide = (parity == 0) ? !p_odd : p_odd;
  }
  out.width = wide ? "h-hat" : "h";
  out.value = (wide ? h_hat : h) / kPi;
  return out;
}

double crossover_h(int p, int r, double length) {
  require(length > 0, "invalid-domain", "interval length must be positive");
  require(r >= 1, "invalid-order", "crossover needs r >= 1");
  require(p >= r - 1, "invalid-order", "crossover needs p >= r - 1");
  return kPi * 0.5 * length * std::exp(log_factorial_ratio(p + 1 - r, p + 1 + r) / (2.0 * r));
}

double dof_constant(int p, int k, int r) {
  return c_pkr(p, k, r) * std::exp(r * std::log(static_cast<double>(p - k)));
}

double ritz_dof_constant(int p, int k, int r, int q, int l) {
  require(l >= 0 && l <= q, "invalid-order", "need 0 <= l <= q");
  require(k >= -1 && k <= p - 1, "invalid-smoothness", "smoothness must lie in [-1, p - 1]");
  require(q <= k + 1, "nonconforming-order", "projection order exceeds the conforming range k + 1");
  require(q <= r, "invalid-order", "need q <= r");
  require(p >= std::max({q, r - 1, 2 * q - l - 1}), "invalid-order",
          "energy dof constant needs p >= max(q, r - 1, 2q - l - 1)");
  return c_pkr(p - q, k - q, q - l) * c_pkr(p - q, k - q, r - q) *
         std::exp((r - l) * std::log(static_cast<double>(p - k)));
}

double check_identity(int p, int k, int q, int l) {
  require(l >= 0 && l <= q, "invalid-order", "need 0 <= l <= q");
  require(k >= std::max(q - 1, 2 * q - l - 2) && k <= p - 1, "invalid-smoothness",
          "identity needs max(q - 1, 2q - l - 2) <= k <= p - 1");
  require(p >= std::max(q, 2 * q - l - 1), "invalid-order", "identity needs p >= max(q, 2q - l - 1)");
  const double lhs = c_pkr(p - q, k - q, q - l) * c_pkr(p - q, k - q, p + 1 - q);
  const double rhs = c_pkr(p - l, k - l, p + 1 - l);
  return std::abs(lhs - rhs) / rhs;
}

FigureTable figure_table(int id) {
  FigureTable t;
  switch (id) {
  case 1:
    t.columns = {"p", "k", "value"};
    for (int p = 2; p <= 10; ++p)
      for (int k = -1; k <= p - 1; ++k)
        t.rows.push_back({static_cast<double>(p), static_cast<double>(k), dof_constant(p, k, 3)});
    break;
  case 2:
    t.columns = {"p", "k", "value"};
    for (int p = 1; p <= 10; ++p)
      for (int k = -1; k <= p - 1; ++k)
        t.rows.push_back({static_cast<double>(p), static_cast<double>(k), dof_constant(p, k, p + 1)});
    break;
  case 3:
    t.columns = {"p", "k", "ell", "value"};
    for (int p = 1; p <= 10; ++p)
      for (int k = 0; k <= p - 1; ++k)
        for (int l = 0; l <= 1; ++l)
          t.rows.push_back({static_cast<double>(p), static_cast<double>(k), static_cast<double>(l),
                            ritz_dof_constant(p, k, p + 1, 1, l)});
    break;
  case 4:
    t.columns = {"p", "r", "value"};
    for (int r = 1; r <= 11; ++r)
      for (int p = std::max(1, r - 1); p <= 10; ++p)
        t.rows.push_back({static_cast<double>(p), static_cast<double>(r), crossover_h(p, r, 1.0)});
    break;
  default:
    throw Error("unknown-id", "figure id must be 1, 2, 3 or 4");
  }
  return t;
}

} // namespace splb
