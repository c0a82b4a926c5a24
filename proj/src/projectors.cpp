#include "splb/projectors.hpp"

#include <algorithm>
#include <cmath>

#include "splb/errors.hpp"

namespace splb {

namespace {

double relative(double num, double den) { return num / std::max(den, 1e-300); }

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

} // namespace

ProjectionResult l2_project(const SplineSpace& space, const TestFunction& u, int oversample) {
  const BandedSymMatrix M = assemble_gram(space, 0);
  const Eigen::VectorXd f = assemble_load(space, u, 0, oversample);
  SpdSolution sol = solve_spd(M, f);

  Eigen::VectorXd residual = -f;
  const int n = space.dimension();
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - M.bandwidth()); j <= std::min(n - 1, i + M.bandwidth()); ++j)
      residual(i) += M.get(i, j) * sol.x(j);

  ProjectionResult out{SplineFunction(space, to_std(sol.x)), relative(residual.norm(), f.norm()), 0.0,
                       sol.condition_estimate};
  return out;
}

ProjectionResult ritz_project(const SplineSpace& space, const TestFunction& u, int q, int oversample) {
  if (q < 0)
    throw Error("invalid-order", "projection order must be nonnegative");
  if (q == 0)
    return l2_project(space, u, oversample);
  if (q > space.smoothness() + 1)
    throw Error("nonconforming-order", "projection order exceeds the conforming range k + 1");
  if (q > u.max_order)
    throw Error("missing-derivative", "target does not provide derivative order " + std::to_string(q));

  const BandedSymMatrix A = assemble_gram(space, q);
  const Eigen::MatrixXd C = legendre_moment_rows(space, q);
  const Eigen::VectorXd f = assemble_load(space, u, q, oversample);
  const Eigen::VectorXd g = legendre_moments(u, q, space.knots().breakpoints());

  KktSolution sol = solve_kkt(A, C, f, g);

  const int n = space.dimension();
  Eigen::VectorXd residual = C.transpose() * sol.multipliers - f;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - A.bandwidth()); j <= std::min(n - 1, i + A.bandwidth()); ++j)
      residual(i) += A.get(i, j) * sol.x(j);

  ProjectionResult out{SplineFunction(space, to_std(sol.x)),
                       relative(residual.norm(), std::max(f.norm(), g.norm())),
                       relative((C * sol.x - g).norm(), std::max(1.0, g.norm())), sol.condition_estimate};
  return out;
}

ProjectionResult q_project(const SplineSpace& space, const TestFunction& u, int oversample) {
  if (space.degree() < 1)
    throw Error("invalid-order", "commuting projection needs degree >= 1");
  if (space.smoothness() < 0)
    throw Error("invalid-smoothness", "commuting projection needs continuous splines");
  if (u.max_order < 1)
    throw Error("missing-derivative", "commuting projection needs the first derivative");

  const SplineSpace dspace = space.derivative_space();
  TestFunction du;
  du.a = u.a;
  du.b = u.b;
  du.max_order = u.max_order - 1;
  du.breakpoints = u.breakpoints;
  auto ue = u.eval;
  du.eval = [ue](double x, int d) { return ue(x, d + 1); };

  ProjectionResult inner = l2_project(dspace, du, oversample);
  SplineFunction anti = inner.spline.antiderivative();
  const double ua = u.eval(u.a, 0);
  for (double& c : anti.coefficients())
    c += ua;

  return ProjectionResult{std::move(anti), inner.orthogonality_residual, 0.0, inner.condition_estimate};
}

double error_norm(const TestFunction& u, const SplineFunction& s, int l) {
  const SplineSpace& space = s.space();
  const KnotSequence& kn = space.knots();
  if (u.a != kn.a() || u.b != kn.b())
    throw Error("invalid-domain", "target domain does not match the space");
  if (l > u.max_order)
    throw Error("missing-derivative", "target does not provide derivative order " + std::to_string(l));

  const int nq = space.degree() + 1 + 8;
  const GaussRule g = gauss_legendre(nq);
  double acc = 0;
  for (int e = 0; e < kn.n_elements(); ++e) {
    const double zlo = kn.breakpoint(e), zhi = kn.breakpoint(e + 1);
    std::vector<double> cuts{zlo, zhi};
    for (double x : u.breakpoints)
      if (x > zlo && x < zhi)
        cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double mid = 0.5 * (cuts[c] + cuts[c + 1]), hw = 0.5 * (cuts[c + 1] - cuts[c]);
      for (int q = 0; q < nq; ++q) {
        const double x = mid + hw * g.nodes[static_cast<std::size_t>(q)];
        const double d = u.eval(x, l) - s.eval_on_element(e, x, l);
        acc += hw * g.weights[static_cast<std::size_t>(q)] * d * d;
      }
    }
  }
  return std::sqrt(acc);
}

double function_norm(const TestFunction& u, int l, const std::vector<double>& extra_cuts, int nodes_per_piece) {
  if (l > u.max_order)
    throw Error("missing-derivative", "target does not provide derivative order " + std::to_string(l));
  std::vector<double> cuts{u.a, u.b};
  for (double x : u.breakpoints)
    if (x > u.a && x < u.b)
      cuts.push_back(x);
  for (double x : extra_cuts)
    if (x > u.a && x < u.b)
      cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const PiecewiseRule rule = composite_rule(cuts, nodes_per_piece);
  double acc = 0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double v = u.eval(rule.nodes[q], l);
    acc += rule.weights[q] * v * v;
  }
  return std::sqrt(acc);
}

} // namespace splb
