#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "splb/spline_function.hpp"
#include "splb/spline_space.hpp"
#include "splb/test_function.hpp"

namespace testutil {

inline std::mt19937 make_rng(unsigned seed) { return std::mt19937(seed); }

inline double uniform(std::mt19937& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

inline std::vector<double> random_coeffs(std::mt19937& gen, int n, double lo = -1.0, double hi = 1.0) {
  std::vector<double> c(static_cast<std::size_t>(n));
  for (double& v : c)
    v = uniform(gen, lo, hi);
  return c;
}

inline splb::SplineFunction random_spline(const splb::SplineSpace& space, std::mt19937& gen) {
  return splb::SplineFunction(space, random_coeffs(gen, space.dimension()));
}

/// |a - b| measured against max(1, |a|, |b|).
inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// Polynomial with the given monomial coefficients as a projection target.
inline splb::TestFunction poly_target(std::vector<double> coeffs, double a = 0, double b = 1) {
  splb::TestFunction u;
  u.a = a;
  u.b = b;
  u.max_order = 32;
  u.eval = [coeffs](double x, int d) {
    double sum = 0;
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= d; --i) {
      double factor = 1;
      for (int m = 0; m < d; ++m)
        factor *= i - m;
      sum = sum * x + factor * coeffs[static_cast<std::size_t>(i)];
    }
    return sum;
  };
  return u;
}

/// Smooth non-polynomial target with all derivatives available.
inline splb::TestFunction sine_target(double omega, double phase = 0, double a = 0, double b = 1) {
  splb::TestFunction u;
  u.a = a;
  u.b = b;
  u.max_order = 64;
  u.eval = [omega, phase](double x, int d) {
    return std::pow(omega, d) * std::sin(omega * x + phase + d * 1.5707963267948966);
  };
  return u;
}

} // namespace testutil
