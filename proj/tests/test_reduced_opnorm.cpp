#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "splb/constants.hpp"
#include "splb/errors.hpp"
#include "splb/opnorm.hpp"
#include "splb/projectors.hpp"
#include "splb/reduced.hpp"

using namespace splb;

namespace {
constexpr double kPi = 3.14159265358979323846;

// largest scaled one-sided boundary-derivative violation over the constrained orders
double boundary_violation(const ReducedSpace& rs) {
  const SplineSpace& s = rs.space;
  const int p = s.degree();
  const int top = (rs.variant == ReducedVariant::strict) ? p : p - 1;
  const int last = s.knots().n_elements() - 1;
  double worst = 0;
  for (int col = 0; col < rs.m; ++col) {
    std::vector<double> c(static_cast<std::size_t>(rs.m), 0.0);
    c[static_cast<std::size_t>(col)] = 1.0;
    SplineFunction f = member(rs, c);
    for (int alpha = rs.parity; alpha <= top; alpha += 2) {
      double scale = std::pow(s.knots().h_min(), alpha);  // counteract 1/h^alpha derivative growth
      worst = std::max(worst, std::abs(f.eval_on_element(0, s.knots().a(), alpha)) * scale);
      worst = std::max(worst, std::abs(f.eval_on_element(last, s.knots().b(), alpha)) * scale);
    }
  }
  return worst;
}
} // namespace

TEST_CASE("reduced basis columns satisfy their boundary conditions") {
  for (int p = 1; p <= 4; ++p)
    for (int parity : {0, 1})
      for (auto variant : {ReducedVariant::strict, ReducedVariant::relaxed}) {
        SplineSpace space(uniform_knots(0, 1, 8), p, p - 1);
        ReducedSpace rs = build_reduced_space(space, parity, variant);
        CHECK(rs.m > 0);
        CHECK(rs.m <= space.dimension());
        CHECK(boundary_violation(rs) <= 1e-10);
      }
}

TEST_CASE("reduced basis change has orthonormal columns") {
  SplineSpace space(uniform_knots(0, 1, 6), 3, 2);
  ReducedSpace rs = build_reduced_space(space, 0, ReducedVariant::strict);
  for (int i = 0; i < rs.m; ++i)
    for (int j = 0; j < rs.m; ++j) {
      double dot = 0;
      for (int row = 0; row < space.dimension(); ++row)
        dot += rs.basis_entry(row, i) * rs.basis_entry(row, j);
      CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-12);
    }
}

TEST_CASE("degree-zero reduced spaces collapse or fill as expected") {
  SplineSpace space(uniform_knots(0, 1, 3), 0, -1);
  // no odd orders <= 0 exist, so the odd-parity space is the full space
  for (auto variant : {ReducedVariant::strict, ReducedVariant::relaxed}) {
    ReducedSpace rs = build_reduced_space(space, 1, variant);
    CHECK(rs.m == space.dimension());
  }
  // the relaxed even-parity space drops the order-0 condition too
  CHECK(build_reduced_space(space, 0, ReducedVariant::relaxed).m == space.dimension());
  // the strict even-parity space pins both endpoint values
  CHECK(build_reduced_space(space, 0, ReducedVariant::strict).m == space.dimension() - 2);
  SplineSpace single(uniform_knots(0, 1, 0), 0, -1);
  CHECK_THROWS_AS(build_reduced_space(single, 0, ReducedVariant::strict), Error);
  try {
    build_reduced_space(single, 0, ReducedVariant::strict);
  } catch (const Error& e) {
    CHECK(e.reason() == "empty-space");
  }
}

TEST_CASE("degree-one odd-parity strict space loses exactly two dimensions") {
  SplineSpace space(uniform_knots(0, 1, 5), 1, 0);
  ReducedSpace rs = build_reduced_space(space, 1, ReducedVariant::strict);
  CHECK(rs.m == space.dimension() - 2);
}

TEST_CASE("even-parity members vanish at the endpoints") {
  auto gen = testutil::make_rng(991);
  for (int p : {1, 2, 4}) {
    SplineSpace space(uniform_knots(0, 1, 6), p, p - 1);
    ReducedSpace rs = build_reduced_space(space, 0, ReducedVariant::strict);
    SplineFunction f = member(rs, testutil::random_coeffs(gen, rs.m));
    CHECK(std::abs(f.eval(0.0)) <= 1e-10);
    CHECK(std::abs(f.eval(1.0)) <= 1e-10);
  }
}

TEST_CASE("reduced spaces require maximal smoothness") {
  SplineSpace space(uniform_knots(0, 1, 4), 2, 0);
  try {
    build_reduced_space(space, 0, ReducedVariant::strict);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.reason() == "invalid-smoothness");
  }
}

TEST_CASE("odd-parity reduced projection reproduces constants") {
  TestFunction one = testutil::poly_target({1.0});
  one.max_order = 4;
  SplineSpace space(uniform_knots(0, 1, 5), 3, 2);
  ReducedSpace rs = build_reduced_space(space, 1, ReducedVariant::strict);
  SplineFunction s = ritz_reduced(rs, one).spline;
  for (double x : {0.0, 0.4, 1.0})
    CHECK(std::abs(s.eval(x) - 1.0) <= 1e-10);
}

TEST_CASE("odd-parity reduced projection matches the mean") {
  TestFunction u = testutil::sine_target(5.3, 0.37);
  SplineSpace space(uniform_knots(0, 1, 6), 2, 1);
  ReducedSpace rs = build_reduced_space(space, 1, ReducedVariant::strict);
  auto res = ritz_reduced(rs, u);
  Eigen::VectorXd mu = legendre_moments(u, 1, space.knots().breakpoints());
  Eigen::VectorXd ms = legendre_moments(as_test_function(res.spline), 1);
  CHECK(std::abs(mu(0) - ms(0)) <= 1e-10);
}

TEST_CASE("even-parity reduced projection rejects nonzero boundary data") {
  TestFunction u = testutil::sine_target(2.0, 0.5);  // sin(2x + 1/2) != 0 at 0
  SplineSpace space(uniform_knots(0, 1, 4), 2, 1);
  ReducedSpace rs = build_reduced_space(space, 0, ReducedVariant::strict);
  try {
    ritz_reduced(rs, u);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.reason() == "invalid-data");
  }
}

TEST_CASE("reduced projection error meets the parity-table width") {
  for (int p : {1, 2, 3, 4})
    for (int n : {4, 8}) {
      SplineSpace space(uniform_knots(0, 1, n), p, p - 1);
      double h = space.knots().h(), hh = space.knots().h_hat();

      TestFunction even = testutil::sine_target(kPi);  // vanishes at both endpoints
      ReducedSpace rs0 = build_reduced_space(space, 0, ReducedVariant::strict);
      double err0 = error_norm(even, ritz_reduced(rs0, even).spline);
      double bound0 = reduced_bound(0, ReducedVariant::strict, p, h, hh).value * (kPi / std::sqrt(2.0));
      CHECK(err0 <= bound0 * (1 + 1e-9));

      TestFunction odd = testutil::sine_target(kPi, kPi / 2.0);  // cos(pi x)
      ReducedSpace rs1 = build_reduced_space(space, 1, ReducedVariant::strict);
      double err1 = error_norm(odd, ritz_reduced(rs1, odd).spline);
      double bound1 = reduced_bound(1, ReducedVariant::strict, p, h, hh).value * (kPi / std::sqrt(2.0));
      CHECK(err1 <= bound1 * (1 + 1e-9));
    }
}

TEST_CASE("reduced members obey the derivative inverse inequality") {
  auto gen = testutil::make_rng(515);
  SplineSpace space(uniform_knots(0, 1, 7), 3, 2);
  TestFunction zero = testutil::poly_target({0.0});
  for (int parity : {0, 1})
    for (auto variant : {ReducedVariant::strict, ReducedVariant::relaxed}) {
      ReducedSpace rs = build_reduced_space(space, parity, variant);
      for (int trial = 0; trial < 25; ++trial) {
        SplineFunction f = member(rs, testutil::random_coeffs(gen, rs.m));
        double val = error_norm(zero, f);
        double der = error_norm(zero, f.derivative());
        CHECK(der <= (2.0 * std::sqrt(3.0) / space.knots().h_min()) * val * (1 + 1e-12));
      }
    }
}

TEST_CASE("degree-zero reduced projection is rejected") {
  SplineSpace space(uniform_knots(0, 1, 3), 0, -1);
  ReducedSpace rs = build_reduced_space(space, 1, ReducedVariant::strict);
  TestFunction u = testutil::sine_target(3.0);
  try {
    ritz_reduced(rs, u);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.reason() == "invalid-order");
  }
}

TEST_CASE("operator-norm estimate is one at order zero") {
  SplineSpace space(uniform_knots(0, 1, 2), 2, 1);
  ConstantEstimate est = estimate_constant(space, 0, 400);
  CHECK(std::abs(est.value - 1.0) <= 1e-12);
  CHECK(est.t == space.smoothness() + 1);
  CHECK(est.grid >= 400);
}

TEST_CASE("operator-norm estimate recovers the classical single-element constant") {
  SplineSpace space(uniform_knots(0, 1, 0), 0, -1);
  ConstantEstimate est = estimate_constant(space, 1, 400);
  CHECK(std::abs(est.value - 1.0 / kPi) <= 1e-3);
}

TEST_CASE("operator-norm estimate stays below the proved constant") {
  for (int p : {1, 2})
    for (int k = -1; k <= p - 1; ++k)
      for (int r = 1; r <= p + 1; ++r)
        for (int n : {1, 3}) {
          SplineSpace space(uniform_knots(0, 1, n), p, k);
          double est = estimate_constant(space, r, 400).value;
          double bound = projection_bound(space.knots().h(), p, k, r, 1.0).minimum;
          CHECK(est <= bound * (1 + 1e-4));
        }
}

TEST_CASE("operator-norm estimates chain submultiplicatively") {
  SplineSpace space(uniform_knots(0, 1, 3), 2, 1);
  double c2 = estimate_constant(space, 2, 420).value;
  double c1 = estimate_constant(space, 1, 420).value;
  double c1_lower = estimate_constant(space.derivative_space(), 1, 420).value;
  CHECK(c2 <= c1 * c1_lower * (1 + 1e-6));
}

TEST_CASE("operator-norm estimate validates its inputs") {
  SplineSpace space(uniform_knots(0, 1, 2), 1, 0);
  try {
    estimate_constant(space, 1, 100);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.reason() == "resolution");
  }
  CHECK_THROWS_AS(estimate_constant(space, -1, 400), Error);
}
