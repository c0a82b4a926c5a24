#include "splb/spline_space.hpp"

#include <array>
#include <cmath>

#include "splb/errors.hpp"

namespace splb {

SplineSpace::SplineSpace(KnotSequence knots, int degree, int smoothness)
    : knots_(std::move(knots)), p_(degree), k_(smoothness) {
  if (p_ < 0)
    throw Error("invalid-order", "degree must be nonnegative");
  if (k_ < -1 || k_ > p_ - 1)
    throw Error("invalid-smoothness", "smoothness must lie in [-1, degree - 1]");

  const auto& z = knots_.breakpoints();
  const int mult = p_ - k_;
  ext_.reserve(static_cast<std::size_t>(2 * (p_ + 1) + mult * knots_.n_interior()));
  for (int i = 0; i <= p_; ++i)
    ext_.push_back(z.front());
  for (std::size_t j = 1; j + 1 < z.size(); ++j)
    for (int i = 0; i < mult; ++i)
      ext_.push_back(z[j]);
  for (int i = 0; i <= p_; ++i)
    ext_.push_back(z.back());
}

SplineSpace SplineSpace::derivative_space() const {
  if (p_ < 1)
    throw Error("invalid-order", "degree-0 splines have no derivative space");
  if (k_ < 0)
    throw Error("invalid-smoothness", "discontinuous splines have no derivative space");
  return SplineSpace(knots_, p_ - 1, k_ - 1);
}

SplineSpace SplineSpace::antiderivative_space() const {
  return SplineSpace(knots_, p_ + 1, k_ + 1);
}

BasisValues SplineSpace::eval_basis(double x, int d) const {
  const int e = knots_.element_of(x);
  BasisValues out;
  eval_into(span_of_element(e), x, d, out);
  return out;
}

BasisValues SplineSpace::eval_basis_on_element(int e, double x, int d) const {
  if (e < 0 || e >= knots_.n_elements())
    throw Error("out-of-domain", "element index out of range");
  if (x < knots_.breakpoint(e) || x > knots_.breakpoint(e + 1))
    throw Error("out-of-domain", "point outside the requested element");
  BasisValues out;
  eval_into(span_of_element(e), x, d, out);
  return out;
}

// Cox-de Boor triangle with derivatives; all divisors are lengths of
// nonempty knot spans containing the current element.
void SplineSpace::eval_into(int span, double x, int d, BasisValues& out) const {
  if (d < 0 || d > p_)
    throw Error("invalid-order", "derivative order must lie in [0, degree]");

  const double* U = ext_.data();
  const int p = p_;
  out.first_index = span - p;
  out.values.assign(static_cast<std::size_t>(p) + 1, 0.0);

  std::vector<double> ndu(static_cast<std::size_t>((p + 1) * (p + 1)));
  auto NDU = [&](int i, int j) -> double& { return ndu[static_cast<std::size_t>(i * (p + 1) + j)]; };
  std::vector<double> left(static_cast<std::size_t>(p) + 1), right(static_cast<std::size_t>(p) + 1);

  NDU(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[static_cast<std::size_t>(j)] = x - U[span + 1 - j];
    right[static_cast<std::size_t>(j)] = U[span + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      NDU(j, r) = right[static_cast<std::size_t>(r + 1)] + left[static_cast<std::size_t>(j - r)];
      const double temp = NDU(r, j - 1) / NDU(j, r);
      NDU(r, j) = saved + right[static_cast<std::size_t>(r + 1)] * temp;
      saved = left[static_cast<std::size_t>(j - r)] * temp;
    }
    NDU(j, j) = saved;
  }

  if (d == 0) {
    for (int j = 0; j <= p; ++j)
      out.values[static_cast<std::size_t>(j)] = NDU(j, p);
    return;
  }

  std::vector<double> a(2 * static_cast<std::size_t>(p + 1));
  auto A = [&](int s, int j) -> double& { return a[static_cast<std::size_t>(s * (p + 1) + j)]; };

  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    A(0, 0) = 1.0;
    double der = 0.0;
    for (int kk = 1; kk <= d; ++kk) {
      der = 0.0;
      const int rk = r - kk;
      const int pk = p - kk;
      if (r >= kk) {
        A(s2, 0) = A(s1, 0) / NDU(pk + 1, rk);
        der = A(s2, 0) * NDU(rk, pk);
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? kk - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        A(s2, j) = (A(s1, j) - A(s1, j - 1)) / NDU(pk + 1, rk + j);
        der += A(s2, j) * NDU(rk + j, pk);
      }
      if (r <= pk) {
        A(s2, kk) = -A(s1, kk - 1) / NDU(pk + 1, r);
        der += A(s2, kk) * NDU(r, pk);
      }
      std::swap(s1, s2);
    }
    out.values[static_cast<std::size_t>(r)] = der;
  }

  double factor = 1.0;
  for (int kk = 0; kk < d; ++kk)
    factor *= static_cast<double>(p - kk);
  for (int j = 0; j <= p; ++j)
    out.values[static_cast<std::size_t>(j)] *= factor;
}

} // namespace splb
