#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "splb/errors.hpp"
#include "splb/knots.hpp"
#include "splb/spline_function.hpp"
#include "splb/spline_space.hpp"

using namespace splb;

TEST_CASE("knot sequence widths on a graded mesh") {
  KnotSequence ks({0.0, 0.1, 0.4, 1.0});
  CHECK(ks.a() == 0.0);
  CHECK(ks.b() == 1.0);
  CHECK(ks.n_elements() == 3);
  CHECK(ks.n_interior() == 2);
  CHECK(ks.h() == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(ks.h_min() == doctest::Approx(0.1).epsilon(1e-14));
  // doubling the first and last interval: max(0.2, 0.3, 1.2)
  CHECK(ks.h_hat() == doctest::Approx(1.2).epsilon(1e-14));
  CHECK(ks.element_of(0.05) == 0);
  CHECK(ks.element_of(0.1) == 1);
  CHECK(ks.element_of(1.0) == 2);
}

TEST_CASE("knot sequence rejects bad input") {
  CHECK_THROWS_AS(KnotSequence({0.0}), Error);
  CHECK_THROWS_AS(KnotSequence({0.0, 0.5, 0.5, 1.0}), Error);
  try {
    KnotSequence({1.0, 0.0});
  } catch (const Error& e) {
    CHECK(e.reason() == "invalid-domain");
  }
}

TEST_CASE("uniform knots") {
  KnotSequence ks = uniform_knots(-1.0, 3.0, 7);
  CHECK(ks.n_elements() == 8);
  CHECK(ks.h() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ks.h_min() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ks.breakpoint(3) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("dimension formula over the full parameter grid") {
  for (int n = 0; n <= 8; ++n)
    for (int p = 0; p <= 6; ++p)
      for (int k = -1; k <= p - 1; ++k) {
        SplineSpace s(uniform_knots(0, 1, n), p, k);
        CHECK(s.dimension() == n * (p - k) + p + 1);
      }
}

TEST_CASE("space construction rejects out-of-range smoothness") {
  CHECK_THROWS_AS(SplineSpace(uniform_knots(0, 1, 2), 2, 2), Error);
  CHECK_THROWS_AS(SplineSpace(uniform_knots(0, 1, 2), 2, -2), Error);
  CHECK_THROWS_AS(SplineSpace(uniform_knots(0, 1, 2), -1, -1), Error);
}

TEST_CASE("partition of unity and derivative sum zero at random points") {
  auto gen = testutil::make_rng(101);
  for (int p = 0; p <= 6; ++p)
    for (int k : {-1, 0, (p - 1) / 2, p - 1}) {
      if (k < -1 || k > p - 1)
        continue;
      SplineSpace s(uniform_knots(0, 1, 4), p, k);
      for (int trial = 0; trial < 1000; ++trial) {
        double x = testutil::uniform(gen, 0.0, 1.0);
        BasisValues v = s.eval_basis(x, 0);
        double sum = 0;
        for (double b : v.values)
          sum += b;
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        if (p >= 1) {
          BasisValues dv = s.eval_basis(x, 1);
          double dsum = 0;
          for (double b : dv.values)
            dsum += b;
          CHECK(std::abs(dsum) <= 1e-12);
        }
      }
    }
}

TEST_CASE("partition of unity on a graded mesh") {
  auto gen = testutil::make_rng(102);
  KnotSequence graded({0.0, 0.07, 0.22, 0.55, 0.8, 1.0});
  for (int p : {2, 5}) {
    SplineSpace s(graded, p, p - 1);
    for (int trial = 0; trial < 1000; ++trial) {
      double x = testutil::uniform(gen, 0.0, 1.0);
      BasisValues v = s.eval_basis(x, 0);
      double sum = 0;
      for (double b : v.values)
        sum += b;
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("basis values are nonnegative and the window covers the element") {
  SplineSpace s(uniform_knots(0, 1, 4), 3, 1);
  auto gen = testutil::make_rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    double x = testutil::uniform(gen, 0.0, 1.0);
    BasisValues v = s.eval_basis(x, 0);
    CHECK(static_cast<int>(v.values.size()) == 4);
    CHECK(v.first_index >= 0);
    CHECK(v.first_index + 3 < s.dimension());
    for (double b : v.values)
      CHECK(b >= -1e-14);
  }
}

TEST_CASE("smoothness class at interior breakpoints") {
  auto gen = testutil::make_rng(4242);
  KnotSequence ks({0.0, 0.3, 0.65, 1.0});
  for (int p = 1; p <= 5; ++p)
    for (int k = 0; k <= p - 1; ++k) {
      SplineSpace s(ks, p, k);
      SplineFunction f = testutil::random_spline(s, gen);
      for (int i = 1; i <= ks.n_interior(); ++i) {
        double z = ks.breakpoint(i);
        for (int d = 0; d <= k; ++d) {
          double left = f.eval_on_element(i - 1, z, d);
          double right = f.eval_on_element(i, z, d);
          CHECK(testutil::rel_diff(left, right) <= 1e-9);
        }
        if (k + 1 <= p) {
          // one more derivative order jumps for a generic coefficient vector
          double left = f.eval_on_element(i - 1, z, k + 1);
          double right = f.eval_on_element(i, z, k + 1);
          CHECK(std::abs(left - right) > 1e-8 * (std::abs(left) + std::abs(right) + 1));
        }
      }
    }
}

TEST_CASE("discontinuous spaces take right limits at breakpoints") {
  SplineSpace s(uniform_knots(0, 1, 1), 1, -1);
  // coefficients chosen so the two linear pieces disagree at x = 1/2
  SplineFunction f(s, {0.0, 1.0, 0.0, 0.0});
  CHECK(f.eval(0.5) == doctest::Approx(f.eval_on_element(1, 0.5)).epsilon(1e-14));
  CHECK(f.eval_on_element(0, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.eval_on_element(1, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("polynomial embedding is exact") {
  auto gen = testutil::make_rng(7);
  KnotSequence ks({0.0, 0.2, 0.45, 0.8, 1.0});
  for (int p = 0; p <= 5; ++p)
    for (int k = -1; k <= p - 1; ++k) {
      SplineSpace s(ks, p, k);
      std::vector<double> mono = testutil::random_coeffs(gen, p + 1);
      SplineFunction f = embed_polynomial(s, mono);
      for (int trial = 0; trial < 50; ++trial) {
        double x = testutil::uniform(gen, 0.0, 1.0);
        double exact = 0;
        for (int i = p; i >= 0; --i)
          exact = exact * x + mono[static_cast<std::size_t>(i)];
        CHECK(testutil::rel_diff(f.eval(x), exact) <= 1e-12);
      }
    }
}

TEST_CASE("breakpoint insertion preserves the function") {
  auto gen = testutil::make_rng(55);
  for (int p : {1, 2, 4})
    for (int k : {-1, 0, p - 1}) {
      if (k > p - 1)
        continue;
      SplineSpace s(uniform_knots(0, 1, 3), p, k);
      SplineFunction f = testutil::random_spline(s, gen);
      SplineFunction g = insert_breakpoint(f, 0.37);
      CHECK(g.space().knots().n_interior() == 4);
      CHECK(g.space().degree() == p);
      CHECK(g.space().smoothness() == k);
      for (int trial = 0; trial < 100; ++trial) {
        double x = testutil::uniform(gen, 0.0, 1.0);
        CHECK(testutil::rel_diff(g.eval(x), f.eval(x)) <= 1e-10);
      }
    }
}

TEST_CASE("insertion at an existing breakpoint is rejected") {
  SplineSpace s(uniform_knots(0, 1, 3), 2, 1);
  SplineFunction f(s, std::vector<double>(static_cast<std::size_t>(s.dimension()), 1.0));
  CHECK_THROWS_AS(insert_breakpoint(f, 0.25), Error);
  CHECK_THROWS_AS(insert_breakpoint(f, 0.0), Error);
}

TEST_CASE("derivative and antiderivative round trip") {
  auto gen = testutil::make_rng(13);
  SplineSpace s(uniform_knots(0, 2, 4), 3, 2);
  SplineFunction f = testutil::random_spline(s, gen);
  SplineFunction df = f.derivative();
  CHECK(df.space().degree() == 2);
  CHECK(df.space().smoothness() == 1);
  SplineFunction back = df.antiderivative();
  // antidifferentiation vanishes at the left endpoint, so the constant is f(a)
  double c = f.eval(0.0);
  for (int trial = 0; trial < 100; ++trial) {
    double x = testutil::uniform(gen, 0.0, 2.0);
    CHECK(testutil::rel_diff(back.eval(x) + c, f.eval(x)) <= 1e-10);
    CHECK(testutil::rel_diff(df.eval(x), f.eval(x, 1)) <= 1e-9);
  }
  CHECK_THROWS_AS(SplineSpace(uniform_knots(0, 1, 2), 2, -1).derivative_space(), Error);
}

TEST_CASE("derivative space relation") {
  for (int p : {1, 3})
    for (int k = 0; k <= p - 1; ++k) {
      SplineSpace s(uniform_knots(0, 1, 5), p, k);
      SplineSpace d = s.derivative_space();
      CHECK(d.degree() == p - 1);
      CHECK(d.smoothness() == k - 1);
      SplineSpace a = d.antiderivative_space();
      CHECK(a.degree() == p);
      CHECK(a.smoothness() == k);
      CHECK(a.dimension() == s.dimension());
    }
}

TEST_CASE("derivative order beyond the degree is rejected") {
  SplineSpace s(uniform_knots(0, 1, 2), 2, 1);
  CHECK_THROWS_AS(s.eval_basis(0.5, 3), Error);
  try {
    s.eval_basis(0.5, 3);
  } catch (const Error& e) {
    CHECK(e.reason() == "invalid-order");
  }
}
