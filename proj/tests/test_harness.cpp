#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "splb/corpus.hpp"
#include "splb/errors.hpp"
#include "splb/experiment.hpp"
#include "splb/projectors.hpp"

using namespace splb;

namespace {
constexpr double kPi = 3.14159265358979323846;

void expect_config_error(const std::string& text) {
  try {
    parse_config(text);
    FAIL("accepted: ", text);
  } catch (const Error& e) {
    CHECK(e.reason() == "invalid-config");
  }
}
} // namespace

TEST_CASE("sine target carries its exact derivative norms") {
  CorpusParams pr;
  pr.omega = 2 * kPi;
  TestFunction u = corpus("sin", pr);
  REQUIRE(static_cast<bool>(u.seminorm));
  for (int r = 0; r <= 3; ++r) {
    double exact = u.seminorm(r);
    double numeric = function_norm(u, r, {0.1, 0.37, 0.62, 0.88});
    CHECK(testutil::rel_diff(exact, numeric) <= 1e-12);
  }
  CHECK(std::abs(u.seminorm(0) - 1.0 / std::sqrt(2.0)) <= 1e-13);
  CHECK(std::abs(u.seminorm(1) - 2 * kPi / std::sqrt(2.0)) <= 1e-12);
}

TEST_CASE("polynomial target differentiates and integrates exactly") {
  CorpusParams pr;
  pr.coefficients = {1.0, -2.0, 0.0, 3.0};
  TestFunction u = corpus("poly", pr);
  CHECK(u(0.5) == doctest::Approx(1.0 - 1.0 + 3.0 * 0.125).epsilon(1e-14));
  CHECK(u(0.5, 1) == doctest::Approx(-2.0 + 9.0 * 0.25).epsilon(1e-14));
  CHECK(testutil::rel_diff(u.seminorm(1), function_norm(u, 1)) <= 1e-12);
  CHECK(u.seminorm(5) == 0.0);
}

TEST_CASE("exponential target matches its closed-form norms") {
  CorpusParams pr;
  pr.rate = -0.8;
  TestFunction u = corpus("exp", pr);
  for (int r = 0; r <= 4; ++r) {
    double exact = u.seminorm(r);
    double closed = std::pow(0.8, r) *
                    std::sqrt((std::exp(2 * pr.rate * 1.0) - 1.0) / (2 * pr.rate));
    CHECK(testutil::rel_diff(exact, closed) <= 1e-12);
  }
}

TEST_CASE("rational bump target has derivatives but no exact norms") {
  TestFunction u = corpus("runge");
  CHECK(!u.seminorm);
  CHECK(u.max_order >= 6);
  CHECK(u(0.2) == doctest::Approx(0.5).epsilon(1e-14));  // (5 x)^2 = 1 there
  // symmetric decay of the derivative around the peak
  CHECK(u(0.1, 1) == doctest::Approx(-u(-0.1, 1)).epsilon(1e-12));
}

TEST_CASE("kinked target is C1 with a unit-scale curvature jump") {
  TestFunction u = corpus("piecewise_c1");
  REQUIRE(u.breakpoints.size() == 1);
  const double c = u.breakpoints[0];
  CHECK(std::abs(u(c - 1e-9) - u(c + 1e-9)) <= 1e-8);
  CHECK(std::abs(u(c - 1e-9, 1) - u(c + 1e-9, 1)) <= 1e-7);
  CHECK(std::abs((u(c + 1e-12, 2) - u(c - 1e-12, 2)) - 3.0) <= 1e-9);
  CHECK_THROWS_AS(u.eval(0.3, 3), Error);
  try {
    u.seminorm(3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.reason() == "missing-derivative");
  }
  CHECK(testutil::rel_diff(u.seminorm(2), function_norm(u, 2, {c})) <= 1e-12);
}

TEST_CASE("target construction validates ids and parameters") {
  try {
    corpus("witch-of-agnesi");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.reason() == "unknown-id");
  }
  CorpusParams flat;
  flat.omega = 0;
  CHECK_THROWS_AS(corpus("sin", flat), Error);
  CorpusParams empty;
  empty.a = 1;
  empty.b = 1;
  try {
    corpus("sin", empty);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.reason() == "invalid-domain");
  }
}

TEST_CASE("configuration parsing fills every field") {
  ExperimentConfig c = parse_config(R"({
    "projector": "ritz:2",
    "domain": {"a": 0, "b": 2},
    "degree": 3,
    "smoothness": 1,
    "r": 3,
    "ell": 1,
    "target": {"id": "sin", "omega": 4.0, "phase": 1.0},
    "schedule": [2, 4, 8, 16],
    "oversample": 6
  })");
  CHECK(c.kind == "ritz");
  CHECK(c.q == 2);
  CHECK(c.a == 0.0);
  CHECK(c.b == 2.0);
  CHECK(c.degree == 3);
  CHECK(c.smoothness == 1);
  CHECK(c.r == 3);
  CHECK(c.ell == 1);
  CHECK(c.target_id == "sin");
  CHECK(c.target.omega == 4.0);
  CHECK(c.target.phase == 1.0);
  CHECK(c.schedule == std::vector<int>{2, 4, 8, 16});
  CHECK(c.oversample == 6);
}

TEST_CASE("configuration parsing applies the documented defaults") {
  ExperimentConfig c = parse_config(R"({
    "projector": "l2",
    "degree": 4,
    "r": 2,
    "target": {"id": "exp"},
    "knots": [0, 0.5, 0.75, 1]
  })");
  CHECK(c.smoothness == 3);  // maximal smoothness unless stated
  CHECK(c.oversample == 4);
  CHECK(c.knots.size() == 4);
  CHECK(c.schedule.empty());
  ExperimentConfig red = parse_config(R"({
    "projector": "reduced:odd:relaxed",
    "degree": 2,
    "target": {"id": "sin"},
    "schedule": [4]
  })");
  CHECK(red.parity == 1);
  CHECK(red.variant == "relaxed");
  CHECK(red.r == 1);
}

TEST_CASE("configuration parsing rejects malformed input") {
  expect_config_error("{nope");
  expect_config_error("[1, 2]");
  expect_config_error(R"({"projector": "l2", "degree": 2, "r": 1, "target": {"id": "sin"}, "schedule": [4], "extra": 1})");
  expect_config_error(R"({"degree": 2, "r": 1, "target": {"id": "sin"}, "schedule": [4]})");
  expect_config_error(R"({"projector": "l2", "r": 1, "target": {"id": "sin"}, "schedule": [4]})");
  expect_config_error(R"({"projector": "l2", "degree": 2, "r": 1, "schedule": [4]})");
  expect_config_error(R"({"projector": "galerkin", "degree": 2, "r": 1, "target": {"id": "sin"}, "schedule": [4]})");
  expect_config_error(R"({"projector": "tensor", "degree": 2, "r": 2, "target": {"id": "sin2d"}, "schedule": [4]})");
  expect_config_error(R"({"projector": "ritz:2", "q": 1, "degree": 3, "smoothness": 2, "r": 3, "target": {"id": "sin"}, "schedule": [4]})");
  expect_config_error(R"({"projector": "l2", "q": 1, "degree": 2, "r": 1, "target": {"id": "sin"}, "schedule": [4]})");
  expect_config_error(R"({"projector": "l2", "map": "affine", "degree": 2, "r": 1, "target": {"id": "sin"}, "schedule": [4]})");
  expect_config_error(R"({"projector": "l2", "degree": 2, "r": 1, "ell": 1, "target": {"id": "sin"}, "schedule": [4]})");
  expect_config_error(R"({"projector": "tensor:l2", "degree": 2, "r": 2, "ell": 1, "target": {"id": "sin2d"}, "schedule": [4]})");
  expect_config_error(R"({"projector": "l2", "degree": 2, "r": 1, "ell1": 1, "target": {"id": "sin"}, "schedule": [4]})");
  expect_config_error(R"({"projector": "l2", "degree": 2, "r": 1, "target": {"id": "sin"}, "schedule": [4], "knots": [0, 1]})");
  expect_config_error(R"({"projector": "l2", "degree": 2, "r": 1, "target": {"id": "sin"}})");
  expect_config_error(R"({"projector": "l2", "degree": 2, "r": 1, "target": {"id": "sin"}, "schedule": [8, 4]})");
  expect_config_error(R"({"projector": "l2", "degree": 2, "r": 1, "target": {"id": "sin"}, "knots": [1]})");
  expect_config_error(R"({"projector": "l2", "degree": 2, "smoothness": 2, "r": 1, "target": {"id": "sin"}, "schedule": [4]})");
  expect_config_error(R"({"projector": "reduced", "degree": 2, "r": 2, "target": {"id": "sin"}, "schedule": [4]})");
  expect_config_error(R"({"projector": "tensor:ritz", "degree": 2, "r": 2, "target": {"id": "sin"}, "schedule": [4]})");
  expect_config_error(R"({"projector": "l2", "degree": 2, "r": 1, "target": {"id": "sin"}, "schedule": [4], "oversample": 17})");
  expect_config_error(R"({"projector": "l2", "degree": 2, "r": 1, "target": {"id": "sin", "rate": 2}, "schedule": [4]})");
}

TEST_CASE("report output is byte-stable and carries the fixed header") {
  ExperimentConfig c = parse_config(R"({
    "projector": "l2",
    "degree": 2,
    "r": 3,
    "target": {"id": "sin"},
    "schedule": [2, 4, 8]
  })");
  ErrorReport first = run_verify(c);
  ErrorReport second = run_verify(c);
  CHECK(first.csv() == second.csv());
  const std::string csv = first.csv();
  CHECK(csv.rfind("p,k,q,ell,r,N,h,error,bound,effectivity,order\n", 0) == 0);
  CHECK(first.rows.size() == 3);
  std::size_t commas = 0;
  const std::string line = csv.substr(csv.find('\n') + 1, csv.find('\n', csv.find('\n') + 1) - csv.find('\n') - 1);
  for (char ch : line)
    if (ch == ',')
      ++commas;
  CHECK(commas == 10);
}

TEST_CASE("infeasible rows are skipped with a stable reason") {
  // second-order energy projection needs two continuous derivatives
  ExperimentConfig c = parse_config(R"({
    "projector": "ritz:2",
    "degree": 3,
    "smoothness": 0,
    "r": 3,
    "target": {"id": "sin"},
    "schedule": [4, 8]
  })");
  ErrorReport rep = run_verify(c);
  REQUIRE(rep.rows.size() == 2);
  for (const ReportRow& row : rep.rows) {
    CHECK(row.skipped);
    CHECK(row.reason == "nonconforming-order");
  }
  CHECK(rep.csv().find("# skipped") != std::string::npos);
  CHECK(rep.csv().find("reason=nonconforming-order") != std::string::npos);
}

TEST_CASE("order fitting recovers clean slopes and drops bad coarse points") {
  std::vector<double> hs = {1.0, 0.5, 0.25, 0.125, 0.0625};
  std::vector<double> errs;
  for (double h : hs)
    errs.push_back(0.7 * h * h * h);
  CHECK(std::abs(fit_order(hs, errs) - 3.0) <= 1e-9);

  // the window is the last four points, so a wild coarsest value is invisible
  std::vector<double> wild = errs;
  wild[0] = 1e6;
  CHECK(std::abs(fit_order(hs, wild) - 3.0) <= 1e-9);

  // inside the window a bad coarsest point breaks the fit quality and is dropped
  std::vector<double> hs4 = {1.0, 0.5, 0.25, 0.125};
  std::vector<double> errs4 = {1e3, 0.7 * 0.125, 0.7 * 0.015625, 0.7 * 0.001953125};
  CHECK(std::abs(fit_order(hs4, errs4) - 3.0) <= 1e-9);

  CHECK(fit_order({0.5}, {0.1}) == 0.0);
  CHECK(fit_order({}, {}) == 0.0);
}

TEST_CASE("verification runs certify the low-order estimate") {
  ExperimentConfig c = parse_config(R"({
    "projector": "l2",
    "degree": 2,
    "r": 3,
    "target": {"id": "sin"},
    "schedule": [4, 8]
  })");
  ErrorReport rep = run_verify(c);
  CHECK(rep.pass);
  for (const ReportRow& row : rep.rows) {
    REQUIRE(!row.skipped);
    CHECK(row.effectivity > 0);
    CHECK(row.effectivity <= 1 + 1e-9);
    CHECK(row.bound > 0);
  }
}

TEST_CASE("explicit knot lists give a single row") {
  ExperimentConfig c = parse_config(R"({
    "projector": "q",
    "degree": 2,
    "r": 2,
    "ell": 1,
    "target": {"id": "exp"},
    "knots": [0, 0.25, 0.5, 0.75, 1]
  })");
  ErrorReport rep = run_verify(c);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].N == 3);
  CHECK(!rep.rows[0].skipped);
  CHECK(rep.rows[0].h == 0.25);
}

TEST_CASE("glued layouts report one row per patch") {
  ExperimentConfig c = parse_config(R"({
    "projector": "multipatch",
    "degree": 2,
    "r": 2,
    "target": {"id": "sin2d"},
    "schedule": [3, 5]
  })");
  ErrorReport rep = run_verify(c);
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.pass);
  for (const ReportRow& row : rep.rows) {
    REQUIRE(!row.skipped);
    CHECK(row.effectivity <= 1 + 1e-9);
  }
}

TEST_CASE("convergence runs demand a usable schedule") {
  ExperimentConfig c = parse_config(R"({
    "projector": "l2",
    "degree": 2,
    "r": 3,
    "target": {"id": "sin"},
    "schedule": [2, 4, 8]
  })");
  try {
    run_convergence(c);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.reason() == "invalid-config");
  }
}

TEST_CASE("convergence runs recover the predicted rate") {
  ExperimentConfig c = parse_config(R"({
    "projector": "l2",
    "degree": 2,
    "r": 3,
    "target": {"id": "sin"},
    "schedule": [2, 5, 11, 23]
  })");
  ErrorReport rep = run_convergence(c);
  CHECK(rep.pass);
  CHECK(rep.rows.back().order >= 2.8);
}

TEST_CASE("convergence runs fail honestly when nothing can be measured") {
  // the kinked target has no third derivative, so every bound side is skipped
  ExperimentConfig c = parse_config(R"({
    "projector": "l2",
    "degree": 2,
    "r": 3,
    "target": {"id": "piecewise_c1"},
    "schedule": [2, 4, 8, 16]
  })");
  ErrorReport rep = run_convergence(c);
  CHECK(!rep.pass);
  for (const ReportRow& row : rep.rows)
    CHECK(row.skipped);
}
