#include "splb/spline_function.hpp"

#include <algorithm>
#include <cmath>

#include "splb/errors.hpp"

namespace splb {

SplineFunction::SplineFunction(SplineSpace space, std::vector<double> coefficients)
    : space_(std::move(space)), coeffs_(std::move(coefficients)) {
  if (static_cast<int>(coeffs_.size()) != space_.dimension())
    throw Error("invalid-data", "coefficient count does not match the space dimension");
}

double SplineFunction::eval(double x, int d) const {
  const BasisValues bv = space_.eval_basis(x, d);
  double s = 0;
  for (int j = 0; j <= space_.degree(); ++j)
    s += coeffs_[static_cast<std::size_t>(bv.first_index + j)] * bv.values[static_cast<std::size_t>(j)];
  return s;
}

double SplineFunction::eval_on_element(int e, double x, int d) const {
  const BasisValues bv = space_.eval_basis_on_element(e, x, d);
  double s = 0;
  for (int j = 0; j <= space_.degree(); ++j)
    s += coeffs_[static_cast<std::size_t>(bv.first_index + j)] * bv.values[static_cast<std::size_t>(j)];
  return s;
}

SplineFunction SplineFunction::derivative() const {
  SplineSpace dspace = space_.derivative_space();
  const int p = space_.degree();
  const auto& T = space_.extended_knots();
  const int n = space_.dimension();
  std::vector<double> d(static_cast<std::size_t>(n) - 1);
  for (int j = 0; j + 1 < n; ++j) {
    const double dt = T[static_cast<std::size_t>(j + p + 1)] - T[static_cast<std::size_t>(j + 1)];
    d[static_cast<std::size_t>(j)] = p * (coeffs_[static_cast<std::size_t>(j + 1)] - coeffs_[static_cast<std::size_t>(j)]) / dt;
  }
  return SplineFunction(std::move(dspace), std::move(d));
}

SplineFunction SplineFunction::antiderivative() const {
  SplineSpace aspace = space_.antiderivative_space();
  const int p = space_.degree();
  const auto& T = space_.extended_knots();
  const int n = space_.dimension();
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  d[0] = 0;
  for (int j = 0; j < n; ++j)
    d[static_cast<std::size_t>(j + 1)] =
        d[static_cast<std::size_t>(j)] +
        coeffs_[static_cast<std::size_t>(j)] * (T[static_cast<std::size_t>(j + p + 1)] - T[static_cast<std::size_t>(j)]) / (p + 1);
  return SplineFunction(std::move(aspace), std::move(d));
}

namespace {

// psi_j(y) = prod_{i=1..p} (y - T[j+i]), expanded in the monomial basis.
std::vector<double> support_polynomial(const std::vector<double>& T, int j, int p) {
  std::vector<double> c{1.0};
  for (int i = 1; i <= p; ++i) {
    const double root = T[static_cast<std::size_t>(j + i)];
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t m = 0; m < c.size(); ++m) {
      next[m + 1] += c[m];
      next[m] -= root * c[m];
    }
    c = std::move(next);
  }
  return c;
}

double eval_poly_derivative(const std::vector<double>& c, double x, int d) {
  double s = 0;
  double xp = 1;
  for (std::size_t m = static_cast<std::size_t>(d); m < c.size(); ++m) {
    double f = 1;
    for (int i = 0; i < d; ++i)
      f *= static_cast<double>(m - static_cast<std::size_t>(i));
    s += f * c[m] * xp;
    xp *= x;
  }
  return s;
}

} // namespace

SplineFunction embed_polynomial(const SplineSpace& space, const std::vector<double>& monomial_coeffs) {
  const int p = space.degree();
  if (monomial_coeffs.empty())
    throw Error("invalid-data", "empty polynomial");
  if (static_cast<int>(monomial_coeffs.size()) - 1 > p)
    throw Error("invalid-order", "polynomial degree exceeds the space degree");

  const auto& T = space.extended_knots();
  const int n = space.dimension();
  double pfact = 1;
  for (int i = 2; i <= p; ++i)
    pfact *= i;

  std::vector<double> coeffs(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const std::vector<double> psi = support_polynomial(T, j, p);
    const double tau = 0.5 * (T[static_cast<std::size_t>(j)] + T[static_cast<std::size_t>(j + p + 1)]);
    double s = 0;
    double sign = 1;
    for (int nu = 0; nu <= p; ++nu) {
      s += sign * eval_poly_derivative(psi, tau, p - nu) * eval_poly_derivative(monomial_coeffs, tau, nu);
      sign = -sign;
    }
    coeffs[static_cast<std::size_t>(j)] = s / pfact;
  }
  return SplineFunction(space, std::move(coeffs));
}

SplineFunction insert_breakpoint(const SplineFunction& f, double zeta) {
  const SplineSpace& space = f.space();
  const KnotSequence& kn = space.knots();
  if (!(zeta > kn.a() && zeta < kn.b()))
    throw Error("invalid-domain", "new breakpoint must lie strictly inside the domain");
  for (double z : kn.breakpoints())
    if (z == zeta)
      throw Error("invalid-domain", "breakpoint already present");

  const int p = space.degree();
  const int mult = p - space.smoothness();

  // Boehm insertion, repeated until the new breakpoint has full interior
  // multiplicity.
  std::vector<double> T = space.extended_knots();
  std::vector<double> c = f.coefficients();
  for (int rep = 0; rep < mult; ++rep) {
    int mu = 0;
    while (!(T[static_cast<std::size_t>(mu)] <= zeta && zeta < T[static_cast<std::size_t>(mu + 1)]))
      ++mu;
    std::vector<double> q(c.size() + 1);
    for (int i = 0; i <= mu - p; ++i)
      q[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)];
    for (int i = mu - p + 1; i <= mu; ++i) {
      const double lo = T[static_cast<std::size_t>(i)], hi = T[static_cast<std::size_t>(i + p)];
      const double alpha = (zeta - lo) / (hi - lo);
      q[static_cast<std::size_t>(i)] =
          alpha * c[static_cast<std::size_t>(i)] + (1 - alpha) * c[static_cast<std::size_t>(i - 1)];
    }
    for (std::size_t i = static_cast<std::size_t>(mu) + 1; i < q.size(); ++i)
      q[i] = c[i - 1];
    T.insert(T.begin() + mu + 1, zeta);
    c = std::move(q);
  }

  std::vector<double> z = kn.breakpoints();
  z.insert(std::upper_bound(z.begin(), z.end(), zeta), zeta);
  SplineSpace refined(KnotSequence(std::move(z)), p, space.smoothness());
  return SplineFunction(std::move(refined), std::move(c));
}

} // namespace splb
