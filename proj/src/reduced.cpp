#include "splb/reduced.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "splb/assembly.hpp"
#include "splb/banded.hpp"
#include "splb/errors.hpp"

namespace splb {

ReducedSpace build_reduced_space(const SplineSpace& space, int parity, ReducedVariant variant) {
  if (parity != 0 && parity != 1)
    throw Error("invalid-data", "parity must be 0 (even) or 1 (odd)");
  const int p = space.degree();
  if (space.smoothness() != p - 1)
    throw Error("invalid-smoothness", "reduced spaces need maximal smoothness k = p - 1");

  const int dim = space.dimension();
  const int alpha_max = (variant == ReducedVariant::strict) ? p : p - 1;
  std::vector<int> alphas;
  for (int a = parity; a <= alpha_max; a += 2)
    alphas.push_back(a);

  if (alphas.empty()) {
    std::vector<double> identity(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i)
      identity[static_cast<std::size_t>(i) * dim + i] = 1.0;
    return ReducedSpace{space, parity, variant, dim, std::move(identity)};
  }

  const int last = space.knots().n_elements() - 1;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(2 * static_cast<int>(alphas.size()), dim);
  int row = 0;
  for (int a : alphas) {
    for (int side = 0; side < 2; ++side, ++row) {
      const int e = (side == 0) ? 0 : last;
      const double x = (side == 0) ? space.knots().a() : space.knots().b();
      const BasisValues bv = space.eval_basis_on_element(e, x, a);
      for (std::size_t j = 0; j < bv.values.size(); ++j)
        C(row, bv.first_index + j) = bv.values[j];
    }
  }
  for (int i = 0; i < C.rows(); ++i) {
    const double s = C.row(i).norm();
    if (s > 0)
      C.row(i) /= s;
  }

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-10 * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff)
      ++rank;
  const int m = dim - rank;
  if (m == 0)
    throw Error("empty-space", "boundary conditions annihilate the whole space");

  std::vector<double> flat(static_cast<std::size_t>(dim) * m, 0.0);
  const Eigen::MatrixXd Z = svd.matrixV().rightCols(m);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < m; ++j)
      flat[static_cast<std::size_t>(i) * m + j] = Z(i, j);
  return ReducedSpace{space, parity, variant, m, std::move(flat)};
}

SplineFunction member(const ReducedSpace& reduced, const std::vector<double>& coeffs) {
  if (static_cast<int>(coeffs.size()) != reduced.m)
    throw Error("invalid-data", "coefficient count must match the reduced dimension");
  const int dim = reduced.space.dimension();
  std::vector<double> parent(dim, 0.0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < reduced.m; ++j)
      parent[i] += reduced.basis_entry(i, j) * coeffs[j];
  return SplineFunction(reduced.space, parent);
}

ProjectionResult ritz_reduced(const ReducedSpace& reduced, const TestFunction& u) {
  const SplineSpace& space = reduced.space;
  const int p = space.degree();
  if (p < 1)
    throw Error("invalid-order", "reduced energy projection needs degree >= 1");
  if (u.a != space.knots().a() || u.b != space.knots().b())
    throw Error("invalid-domain", "data domain must match the space domain");
  if (u.max_order < 1)
    throw Error("missing-derivative", "energy projection needs a first derivative");

  const int dim = space.dimension();
  const int m = reduced.m;
  Eigen::MatrixXd Z(dim, m);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < m; ++j)
      Z(i, j) = reduced.basis_entry(i, j);

  const BandedSymMatrix stiff = assemble_gram(space, 1);
  Eigen::MatrixXd A(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      A(i, j) = stiff.get(i, j);
  const Eigen::MatrixXd Ar = Z.transpose() * A * Z;

  const Eigen::VectorXd f = assemble_load(space, u, 1);
  const Eigen::VectorXd fr = Z.transpose() * f;

  Eigen::VectorXd xr(m);
  double constraint_residual = 0;
  double condition = 1;

  if (reduced.parity == 0) {
    if (std::abs(u.eval(u.a, 0)) > 1e-9 || std::abs(u.eval(u.b, 0)) > 1e-9)
      throw Error("invalid-data", "even-parity projection needs vanishing endpoint values");
    const Eigen::LLT<Eigen::MatrixXd> llt(Ar);
    if (llt.info() != Eigen::Success)
      throw Error("not-positive-definite", "reduced stiffness matrix is not positive definite");
    xr = llt.solve(fr);
    const Eigen::VectorXd d = llt.matrixL().toDenseMatrix().diagonal();
    condition = std::pow(d.maxCoeff() / d.minCoeff(), 2);
  } else {
    // Constants lie in the space, so pin the mean.
    const Eigen::VectorXd cr = Z.transpose() * basis_integrals(space);
    const double mean_u = legendre_moments(u, 1, space.knots().breakpoints())(0);

    Eigen::MatrixXd Akkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
    Akkt.topLeftCorner(m, m) = Ar;
    Akkt.topRightCorner(m, 1) = cr;
    Akkt.bottomLeftCorner(1, m) = cr.transpose();
    Eigen::VectorXd rhs(m + 1);
    rhs.head(m) = fr;
    rhs(m) = mean_u;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(Akkt);
    if (!lu.isInvertible())
      throw Error("singular-system", "mean-constrained reduced system is singular");
    const Eigen::VectorXd sol = lu.solve(rhs);
    xr = sol.head(m);
    const Eigen::VectorXd du = lu.matrixLU().diagonal().cwiseAbs();
    condition = du.maxCoeff() / du.minCoeff();
    constraint_residual = std::abs(cr.dot(xr) - mean_u) / std::max(1.0, std::abs(mean_u));
  }

  std::vector<double> coeffs(xr.data(), xr.data() + m);

  Eigen::VectorXd resid = Ar * xr - fr;
  if (reduced.parity == 1) {
    const Eigen::VectorXd cr = Z.transpose() * basis_integrals(space);
    // Remove the multiplier direction before measuring orthogonality.
    if (cr.norm() > 0)
      resid -= (resid.dot(cr) / cr.squaredNorm()) * cr;
  }
  return ProjectionResult{member(reduced, coeffs), resid.norm() / std::max(1e-300, fr.norm()),
                          constraint_residual, condition};
}

} // namespace splb
