#include "splb/corpus.hpp"

#include <cmath>

#include "splb/errors.hpp"
#include "splb/quadrature.hpp"

namespace splb {

namespace {

constexpr double kPi = 3.14159265358979323846;

double poly_eval(const std::vector<double>& c, double x) {
  double v = 0;
  for (std::size_t i = c.size(); i-- > 0;)
    v = v * x + c[i];
  return v;
}

std::vector<double> poly_derive(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i)
    d.push_back(c[i] * static_cast<double>(i));
  if (d.empty())
    d.push_back(0.0);
  return d;
}

std::vector<double> poly_mul(const std::vector<double>& f, const std::vector<double>& g) {
  std::vector<double> h(f.size() + g.size() - 1, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      h[i + j] += f[i] * g[j];
  return h;
}

// Exact L2 norm of a piecewise polynomial evaluator of degree <= 2 * nodes - 1
// per piece.
double piecewise_poly_norm(const std::function<double(double)>& f, const std::vector<double>& cuts, int nodes) {
  const PiecewiseRule rule = composite_rule(cuts, nodes);
  double acc = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(rule.nodes[i]);
    acc += rule.weights[i] * v * v;
  }
  return std::sqrt(acc);
}

TestFunction sin_target(const CorpusParams& pr) {
  if (pr.omega <= 0)
    throw Error("invalid-data", "sin target needs a positive frequency");
  TestFunction u;
  u.a = pr.a;
  u.b = pr.b;
  u.max_order = 24;
  const double w = pr.omega, phi = pr.phase, a = pr.a, b = pr.b;
  u.eval = [w, phi](double x, int d) { return std::pow(w, d) * std::sin(w * x + phi + d * kPi / 2); };
  u.seminorm = [w, phi, a, b](int r) {
    const double pr_ = phi + r * kPi / 2;
    const double integral = (b - a) / 2 - (std::sin(2 * (w * b + pr_)) - std::sin(2 * (w * a + pr_))) / (4 * w);
    return std::pow(w, r) * std::sqrt(integral);
  };
  return u;
}

TestFunction poly_target(const CorpusParams& pr) {
  std::vector<double> c = pr.coefficients;
  if (c.empty())
    c = {0.0, 1.0};
  if (c.size() > 64)
    throw Error("invalid-data", "polynomial degree must stay below 64");
  TestFunction u;
  u.a = pr.a;
  u.b = pr.b;
  u.max_order = 64;
  const double a = pr.a, b = pr.b;
  u.eval = [c](double x, int d) {
    std::vector<double> cd = c;
    for (int i = 0; i < d && cd.size() > 1; ++i)
      cd = poly_derive(cd);
    if (d >= static_cast<int>(c.size()))
      return 0.0;
    return poly_eval(cd, x);
  };
  auto eval_copy = u.eval;
  u.seminorm = [eval_copy, c, a, b](int r) {
    const int nodes = std::min<int>(64, static_cast<int>(c.size()));
    return piecewise_poly_norm([&](double x) { return eval_copy(x, r); }, {a, b}, nodes);
  };
  return u;
}

TestFunction exp_target(const CorpusParams& pr) {
  if (pr.rate == 0)
    throw Error("invalid-data", "exp target needs a nonzero rate");
  TestFunction u;
  u.a = pr.a;
  u.b = pr.b;
  u.max_order = 24;
  const double s = pr.rate, a = pr.a, b = pr.b;
  u.eval = [s](double x, int d) { return std::pow(s, d) * std::exp(s * x); };
  u.seminorm = [s, a, b](int r) {
    const double integral = (std::exp(2 * s * b) - std::exp(2 * s * a)) / (2 * s);
    return std::pow(std::fabs(s), r) * std::sqrt(integral);
  };
  return u;
}

// d-th derivative is P_d(x) / q(x)^{d+1} with q = 1 + (s x)^2 and the
// numerator recurrence P_{d+1} = P_d' q - (d + 1) P_d q'.
TestFunction runge_target(const CorpusParams& pr) {
  const double s2 = pr.scale * pr.scale;
  const std::vector<double> q{1.0, 0.0, s2};
  const std::vector<double> qp{0.0, 2.0 * s2};
  const int top = 16;
  std::vector<std::vector<double>> num{{1.0}};
  for (int d = 0; d < top; ++d) {
    std::vector<double> next = poly_mul(poly_derive(num[d]), q);
    const std::vector<double> down = poly_mul(num[d], qp);
    next.resize(std::max(next.size(), down.size()), 0.0);
    for (std::size_t i = 0; i < down.size(); ++i)
      next[i] -= (d + 1) * down[i];
    num.push_back(std::move(next));
  }
  TestFunction u;
  u.a = pr.a;
  u.b = pr.b;
  u.max_order = top;
  u.eval = [num, q](double x, int d) {
    return poly_eval(num[d], x) / std::pow(poly_eval(q, x), d + 1);
  };
  return u;
}

// x^3 - x + 1.5 (x - c)_+^2: two square-integrable derivatives, the second
// jumps at c.
TestFunction piecewise_c1_target(const CorpusParams& pr) {
  TestFunction u;
  u.a = pr.a;
  u.b = pr.b;
  u.max_order = 2;
  const double c = pr.kink, a = pr.a, b = pr.b;
  if (c > a && c < b)
    u.breakpoints = {c};
  u.eval = [c](double x, int d) {
    const double plus = x > c ? x - c : 0.0;
    switch (d) {
      case 0: return x * x * x - x + 1.5 * plus * plus;
      case 1: return 3 * x * x - 1 + 3 * plus;
      case 2: return 6 * x + (x > c ? 3.0 : 0.0);
      default: throw Error("missing-derivative", "only two derivatives are square-integrable");
    }
  };
  auto eval_copy = u.eval;
  std::vector<double> cuts{a, b};
  if (c > a && c < b)
    cuts = {a, c, b};
  u.seminorm = [eval_copy, cuts](int r) {
    if (r > 2)
      throw Error("missing-derivative", "only two derivatives are square-integrable");
    return piecewise_poly_norm([&](double x) { return eval_copy(x, r); }, cuts, 8);
  };
  return u;
}

} // namespace

TestFunction corpus(const std::string& id, const CorpusParams& params) {
  if (params.b <= params.a)
    throw Error("invalid-domain", "target domain must have positive length");
  if (id == "sin")
    return sin_target(params);
  if (id == "poly")
    return poly_target(params);
  if (id == "exp")
    return exp_target(params);
  if (id == "runge")
    return runge_target(params);
  if (id == "piecewise_c1")
    return piecewise_c1_target(params);
  throw Error("unknown-id", "no built-in target named \"" + id + "\"");
}

} // namespace splb
