#include "splb/assembly.hpp"

#include <algorithm>

#include "splb/errors.hpp"

namespace splb {

BandedSymMatrix assemble_gram(const SplineSpace& space, int l) {
  const int p = space.degree();
  if (l < 0 || l > std::min(p, space.smoothness() + 1))
    throw Error("nonconforming-order", "gram order must lie in [0, min(p, k + 1)]");

  const int n = space.dimension();
  BandedSymMatrix M(n, std::min(p, n - 1));
  const GaussRule g = gauss_legendre(p + 1);
  const KnotSequence& kn = space.knots();

  for (int e = 0; e < kn.n_elements(); ++e) {
    const double lo = kn.breakpoint(e), hi = kn.breakpoint(e + 1);
    const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    const int first = space.first_active(e);
    for (int q = 0; q <= p; ++q) {
      const double x = mid + hw * g.nodes[static_cast<std::size_t>(q)];
      const double w = hw * g.weights[static_cast<std::size_t>(q)];
      const BasisValues bv = space.eval_basis_on_element(e, x, l);
      for (int a = 0; a <= p; ++a)
        for (int b = a; b <= p; ++b)
          M.lower(first + b, first + a) +=
              w * bv.values[static_cast<std::size_t>(a)] * bv.values[static_cast<std::size_t>(b)];
    }
  }
  return M;
}

Eigen::VectorXd assemble_load(const SplineSpace& space, const TestFunction& u, int l, int oversample) {
  const int p = space.degree();
  if (l < 0 || l > p)
    throw Error("invalid-order", "load derivative order must lie in [0, p]");
  if (l > u.max_order)
    throw Error("missing-derivative", "target does not provide derivative order " + std::to_string(l));
  const KnotSequence& kn = space.knots();
  if (u.a != kn.a() || u.b != kn.b())
    throw Error("invalid-domain", "target domain does not match the space");

  Eigen::VectorXd f = Eigen::VectorXd::Zero(space.dimension());
  const int nq = p + 1 + std::max(0, oversample);
  const GaussRule g = gauss_legendre(nq);

  for (int e = 0; e < kn.n_elements(); ++e) {
    const double zlo = kn.breakpoint(e), zhi = kn.breakpoint(e + 1);
    std::vector<double> cuts{zlo, zhi};
    for (double x : u.breakpoints)
      if (x > zlo && x < zhi)
        cuts.insert(cuts.end() - 1, x);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double mid = 0.5 * (cuts[c] + cuts[c + 1]), hw = 0.5 * (cuts[c + 1] - cuts[c]);
      for (int q = 0; q < nq; ++q) {
        const double x = mid + hw * g.nodes[static_cast<std::size_t>(q)];
        const double w = hw * g.weights[static_cast<std::size_t>(q)];
        const double ux = u.eval(x, l);
        const BasisValues bv = space.eval_basis_on_element(e, x, l);
        for (int a = 0; a <= p; ++a)
          f(bv.first_index + a) += w * ux * bv.values[static_cast<std::size_t>(a)];
      }
    }
  }
  return f;
}

double shifted_legendre(int deg, double a, double b, double x) {
  const double t = 2 * (x - a) / (b - a) - 1;
  double p0 = 1.0, p1 = t;
  if (deg == 0)
    return p0;
  for (int j = 2; j <= deg; ++j) {
    const double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

Eigen::MatrixXd legendre_moment_rows(const SplineSpace& space, int m) {
  const int p = space.degree();
  const int n = space.dimension();
  const KnotSequence& kn = space.knots();
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, n);
  const int nq = p + m + 1;
  const GaussRule g = gauss_legendre(nq);

  for (int e = 0; e < kn.n_elements(); ++e) {
    const double lo = kn.breakpoint(e), hi = kn.breakpoint(e + 1);
    const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    const int first = space.first_active(e);
    for (int q = 0; q < nq; ++q) {
      const double x = mid + hw * g.nodes[static_cast<std::size_t>(q)];
      const double w = hw * g.weights[static_cast<std::size_t>(q)];
      const BasisValues bv = space.eval_basis_on_element(e, x, 0);
      for (int j = 0; j < m; ++j) {
        const double gj = shifted_legendre(j, kn.a(), kn.b(), x);
        for (int a = 0; a <= p; ++a)
          C(j, first + a) += w * gj * bv.values[static_cast<std::size_t>(a)];
      }
    }
  }
  return C;
}

Eigen::VectorXd legendre_moments(const TestFunction& u, int m, const std::vector<double>& extra_cuts,
                                 int oversample) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(m);
  std::vector<double> cuts{u.a, u.b};
  for (double x : u.breakpoints)
    if (x > u.a && x < u.b)
      cuts.push_back(x);
  for (double x : extra_cuts)
    if (x > u.a && x < u.b)
      cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const PiecewiseRule rule = composite_rule(cuts, m + 1 + oversample);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double ux = u.eval(rule.nodes[q], 0);
    for (int j = 0; j < m; ++j)
      g(j) += rule.weights[q] * ux * shifted_legendre(j, u.a, u.b, rule.nodes[q]);
  }
  return g;
}

Eigen::VectorXd basis_integrals(const SplineSpace& space) {
  const int p = space.degree();
  const auto& T = space.extended_knots();
  Eigen::VectorXd v(space.dimension());
  for (int i = 0; i < space.dimension(); ++i)
    v(i) = (T[static_cast<std::size_t>(i + p + 1)] - T[static_cast<std::size_t>(i)]) / (p + 1);
  return v;
}

} // namespace splb
