#include "splb/tensor.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "splb/assembly.hpp"
#include "splb/errors.hpp"
#include "splb/projectors.hpp"
#include "splb/quadrature.hpp"

namespace splb {

namespace {

enum class Kind { l2, ritz, q };

// Univariate projector in sampled form: coefficients =
//   anchor * u(a) + val * [u(nodes)] + der * [u'(nodes)].
struct DirMatrices {
  Eigen::VectorXd anchor;
  Eigen::MatrixXd val;
  Eigen::MatrixXd der;
  std::vector<double> nodes;
  std::vector<double> weights;
};

Eigen::MatrixXd dense_gram(const SplineSpace& space, int l) {
  const BandedSymMatrix g = assemble_gram(space, l);
  const int n = space.dimension();
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      A(i, j) = g.get(i, j);
  return A;
}

// Basis (derivative) values at the nodes, one row per node.
Eigen::MatrixXd sample_basis(const SplineSpace& space, const std::vector<double>& nodes, int d) {
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(static_cast<int>(nodes.size()), space.dimension());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const BasisValues bv = space.eval_basis(nodes[i], d);
    for (std::size_t j = 0; j < bv.values.size(); ++j)
      B(static_cast<int>(i), bv.first_index + j) = bv.values[j];
  }
  return B;
}

// Coefficient lift of antidifferentiation from the derivative space back to
// the full space (left endpoint value zero).
Eigen::MatrixXd antiderivative_lift(const SplineSpace& dspace) {
  const int nd = dspace.dimension();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(nd + 1, nd);
  for (int j = 0; j < nd; ++j) {
    std::vector<double> unit(nd, 0.0);
    unit[j] = 1.0;
    const SplineFunction anti = SplineFunction(dspace, unit).antiderivative();
    const std::vector<double>& c = anti.coefficients();
    for (int i = 0; i <= nd; ++i)
      L(i, j) = c[i];
  }
  return L;
}

DirMatrices dir_matrices(const SplineSpace& space, Kind kind, int oversample,
                         const std::vector<double>& extra_cuts) {
  const int N = space.dimension();
  const int p = space.degree();
  if (kind != Kind::l2) {
    if (p < 1)
      throw Error("invalid-order", "projector needs degree >= 1");
    if (space.smoothness() < 0)
      throw Error("invalid-smoothness", "projector needs a conforming derivative space (k >= 0)");
  }

  const std::vector<double> cuts = merge_cuts(space.knots().breakpoints(), extra_cuts);
  const PiecewiseRule rule = composite_rule(cuts, p + 1 + oversample);
  const int n = static_cast<int>(rule.nodes.size());
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i)
    w(i) = rule.weights[i];

  DirMatrices out;
  out.nodes = rule.nodes;
  out.weights = rule.weights;
  out.anchor = Eigen::VectorXd::Zero(N);

  if (kind == Kind::l2) {
    const Eigen::MatrixXd B = sample_basis(space, rule.nodes, 0);
    const Eigen::LLT<Eigen::MatrixXd> llt(dense_gram(space, 0));
    if (llt.info() != Eigen::Success)
      throw Error("not-positive-definite", "mass matrix is not positive definite");
    out.val = llt.solve(B.transpose() * w.asDiagonal());
    out.der = Eigen::MatrixXd::Zero(N, n);
    return out;
  }

  if (kind == Kind::ritz) {
    // Bordered system: first-derivative stiffness plus the mean constraint.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N + 1, N + 1);
    A.topLeftCorner(N, N) = dense_gram(space, 1);
    const Eigen::VectorXd c = basis_integrals(space);
    A.topRightCorner(N, 1) = c;
    A.bottomLeftCorner(1, N) = c.transpose();
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible())
      throw Error("singular-system", "bordered projector system is singular");
    const Eigen::MatrixXd X = lu.inverse();
    const Eigen::MatrixXd B1 = sample_basis(space, rule.nodes, 1);
    out.der = X.topLeftCorner(N, N) * (B1.transpose() * w.asDiagonal());
    out.val = X.topRightCorner(N, 1) * w.transpose();
    return out;
  }

  // Anchored projector: antidifferentiate the projected derivative.
  const SplineSpace dspace = space.derivative_space();
  const Eigen::MatrixXd Bd = sample_basis(dspace, rule.nodes, 0);
  const Eigen::LLT<Eigen::MatrixXd> llt(dense_gram(dspace, 0));
  if (llt.info() != Eigen::Success)
    throw Error("not-positive-definite", "mass matrix is not positive definite");
  out.der = antiderivative_lift(dspace) * llt.solve(Bd.transpose() * w.asDiagonal());
  out.val = Eigen::MatrixXd::Zero(N, n);
  out.anchor = Eigen::VectorXd::Ones(N);
  return out;
}

void check_domains(const TensorSpace& tspace, const TensorTestFunction& u) {
  if (tspace.spaces.size() != 2)
    throw Error("invalid-order", "this projector handles exactly two directions");
  const KnotSequence& k1 = tspace.spaces[0].knots();
  const KnotSequence& k2 = tspace.spaces[1].knots();
  if (k1.a() != u.a1 || k1.b() != u.b1 || k2.a() != u.a2 || k2.b() != u.b2)
    throw Error("invalid-domain", "target domain must match the space domain");
}

TensorSpline combine(const TensorSpace& tspace, const TensorTestFunction& u, Kind kind, int oversample) {
  check_domains(tspace, u);
  if (kind != Kind::l2 && u.max_order < 1)
    throw Error("missing-derivative", "tensor projector needs mixed first derivatives");

  const DirMatrices m1 = dir_matrices(tspace.spaces[0], kind, oversample, u.breakpoints1);
  const DirMatrices m2 = dir_matrices(tspace.spaces[1], kind, oversample, u.breakpoints2);
  const int n1 = static_cast<int>(m1.nodes.size());
  const int n2 = static_cast<int>(m2.nodes.size());
  const int N1 = tspace.spaces[0].dimension();
  const int N2 = tspace.spaces[1].dimension();
  const double a1 = u.a1, a2 = u.a2;
  const bool need_der = (kind != Kind::l2);

  Eigen::MatrixXd U(n1, n2), U1, U2, U12;
  if (need_der) {
    U1.resize(n1, n2);
    U2.resize(n1, n2);
    U12.resize(n1, n2);
  }
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      const double x = m1.nodes[i], y = m2.nodes[j];
      U(i, j) = u.eval(x, y, 0, 0);
      if (need_der) {
        U1(i, j) = u.eval(x, y, 1, 0);
        U2(i, j) = u.eval(x, y, 0, 1);
        U12(i, j) = u.eval(x, y, 1, 1);
      }
    }

  // Project in direction 1 for every sample line y = const ...
  Eigen::MatrixXd Cx = m1.val * U;
  Eigen::MatrixXd Cxp; // d/dy of the projected line data
  if (need_der) {
    Cx += m1.der * U1;
    Eigen::VectorXd r0(n2), r1(n2);
    for (int j = 0; j < n2; ++j) {
      r0(j) = u.eval(a1, m2.nodes[j], 0, 0);
      r1(j) = u.eval(a1, m2.nodes[j], 0, 1);
    }
    Cx += m1.anchor * r0.transpose();
    Cxp = m1.val * U2 + m1.der * U12 + m1.anchor * r1.transpose();
  }

  // ... then in direction 2 for every coefficient line.
  Eigen::MatrixXd C = Cx * m2.val.transpose();
  if (need_der) {
    Eigen::VectorXd e0(n1), e1(n1);
    for (int i = 0; i < n1; ++i) {
      e0(i) = u.eval(m1.nodes[i], a2, 0, 0);
      e1(i) = u.eval(m1.nodes[i], a2, 1, 0);
    }
    const Eigen::VectorXd cA = m1.anchor * u.eval(a1, a2, 0, 0) + m1.val * e0 + m1.der * e1;
    C += Cxp * m2.der.transpose() + cA * m2.anchor.transpose();
  }

  TensorSpline out{tspace, std::vector<double>(static_cast<std::size_t>(N1) * N2)};
  for (int i = 0; i < N1; ++i)
    for (int j = 0; j < N2; ++j)
      out.coeffs[static_cast<std::size_t>(i) * N2 + j] = C(i, j);
  return out;
}

} // namespace

double TensorSpline::coeff(int i, int j) const {
  const int N2 = space.spaces[1].dimension();
  return coeffs[static_cast<std::size_t>(i) * N2 + j];
}

double TensorSpline::eval(double x, double y, int d1, int d2) const {
  const BasisValues b1 = space.spaces[0].eval_basis(x, d1);
  const BasisValues b2 = space.spaces[1].eval_basis(y, d2);
  double v = 0;
  for (std::size_t i = 0; i < b1.values.size(); ++i)
    for (std::size_t j = 0; j < b2.values.size(); ++j)
      v += b1.values[i] * b2.values[j] * coeff(b1.first_index + static_cast<int>(i), b2.first_index + static_cast<int>(j));
  return v;
}

SplineFunction TensorSpline::edge(int side) const {
  const int N1 = space.spaces[0].dimension();
  const int N2 = space.spaces[1].dimension();
  if (side == 0 || side == 1) {
    const int i = (side == 0) ? 0 : N1 - 1;
    std::vector<double> c(N2);
    for (int j = 0; j < N2; ++j)
      c[j] = coeff(i, j);
    return SplineFunction(space.spaces[1], std::move(c));
  }
  if (side == 2 || side == 3) {
    const int j = (side == 2) ? 0 : N2 - 1;
    std::vector<double> c(N1);
    for (int i = 0; i < N1; ++i)
      c[i] = coeff(i, j);
    return SplineFunction(space.spaces[0], std::move(c));
  }
  throw Error("invalid-data", "edge side must be 0, 1, 2 or 3");
}

TensorSpline tensor_l2_project(const TensorSpace& tspace, const TensorTestFunction& u, int oversample) {
  return combine(tspace, u, Kind::l2, oversample);
}

TensorSpline tensor_ritz_project(const TensorSpace& tspace, const TensorTestFunction& u, int oversample) {
  return combine(tspace, u, Kind::ritz, oversample);
}

TensorSpline tensor_q_project(const TensorSpace& tspace, const TensorTestFunction& u, int oversample) {
  return combine(tspace, u, Kind::q, oversample);
}

double tensor_error_norm(const TensorTestFunction& u, const TensorSpline& s, int l1, int l2) {
  if (l1 > u.max_order || l2 > u.max_order)
    throw Error("missing-derivative", "derivative order exceeds the available smoothness");
  const SplineSpace& s1 = s.space.spaces[0];
  const SplineSpace& s2 = s.space.spaces[1];
  const PiecewiseRule r1 = composite_rule(merge_cuts(s1.knots().breakpoints(), u.breakpoints1), s1.degree() + 9);
  const PiecewiseRule r2 = composite_rule(merge_cuts(s2.knots().breakpoints(), u.breakpoints2), s2.degree() + 9);

  const int n1 = static_cast<int>(r1.nodes.size());
  const int n2 = static_cast<int>(r2.nodes.size());
  Eigen::MatrixXd B1 = Eigen::MatrixXd::Zero(n1, s1.dimension());
  Eigen::MatrixXd B2 = Eigen::MatrixXd::Zero(n2, s2.dimension());
  for (int i = 0; i < n1; ++i) {
    const BasisValues bv = s1.eval_basis(r1.nodes[i], l1);
    for (std::size_t j = 0; j < bv.values.size(); ++j)
      B1(i, bv.first_index + j) = bv.values[j];
  }
  for (int i = 0; i < n2; ++i) {
    const BasisValues bv = s2.eval_basis(r2.nodes[i], l2);
    for (std::size_t j = 0; j < bv.values.size(); ++j)
      B2(i, bv.first_index + j) = bv.values[j];
  }
  Eigen::MatrixXd C(s1.dimension(), s2.dimension());
  for (int i = 0; i < s1.dimension(); ++i)
    for (int j = 0; j < s2.dimension(); ++j)
      C(i, j) = s.coeff(i, j);
  const Eigen::MatrixXd S = B1 * C * B2.transpose();

  double acc = 0;
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      const double diff = u.eval(r1.nodes[i], r2.nodes[j], l1, l2) - S(i, j);
      acc += r1.weights[i] * r2.weights[j] * diff * diff;
    }
  return std::sqrt(acc);
}

double tensor_function_norm(const TensorTestFunction& u, int l1, int l2, const std::vector<double>& cuts1,
                            const std::vector<double>& cuts2, int nodes_per_piece) {
  if (l1 > u.max_order || l2 > u.max_order)
    throw Error("missing-derivative", "derivative order exceeds the available smoothness");
  const std::vector<double> base1{u.a1, u.b1}, base2{u.a2, u.b2};
  const PiecewiseRule r1 = composite_rule(merge_cuts(merge_cuts(base1, u.breakpoints1), cuts1), nodes_per_piece);
  const PiecewiseRule r2 = composite_rule(merge_cuts(merge_cuts(base2, u.breakpoints2), cuts2), nodes_per_piece);
  double acc = 0;
  for (std::size_t i = 0; i < r1.nodes.size(); ++i)
    for (std::size_t j = 0; j < r2.nodes.size(); ++j) {
      const double v = u.eval(r1.nodes[i], r2.nodes[j], l1, l2);
      acc += r1.weights[i] * r2.weights[j] * v * v;
    }
  return std::sqrt(acc);
}

double partial_l2_error(const TensorSpace& tspace, const TensorTestFunction& u, int direction, int oversample) {
  check_domains(tspace, u);
  if (direction != 0 && direction != 1)
    throw Error("invalid-data", "direction must be 0 or 1");
  const SplineSpace& proj_space = tspace.spaces[direction];
  const SplineSpace& other_space = tspace.spaces[1 - direction];
  const DirMatrices mp =
      dir_matrices(proj_space, Kind::l2, oversample, direction == 0 ? u.breakpoints1 : u.breakpoints2);
  const PiecewiseRule other = composite_rule(
      merge_cuts(other_space.knots().breakpoints(), direction == 0 ? u.breakpoints2 : u.breakpoints1),
      other_space.degree() + 9);

  const int np = static_cast<int>(mp.nodes.size());
  const int no = static_cast<int>(other.nodes.size());
  Eigen::MatrixXd U(np, no);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < no; ++j)
      U(i, j) = (direction == 0) ? u.eval(mp.nodes[i], other.nodes[j], 0, 0)
                                 : u.eval(other.nodes[j], mp.nodes[i], 0, 0);

  const Eigen::MatrixXd B = sample_basis(proj_space, mp.nodes, 0);
  const Eigen::MatrixXd R = U - B * (mp.val * U);

  double acc = 0;
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < no; ++j)
      acc += mp.weights[i] * other.weights[j] * R(i, j) * R(i, j);
  return std::sqrt(acc);
}

std::vector<double> tensor_l2_coefficients(const std::vector<SplineSpace>& spaces,
                                           const std::function<double(const std::vector<double>&)>& value,
                                           int oversample) {
  const int d = static_cast<int>(spaces.size());
  if (d < 1)
    throw Error("invalid-data", "need at least one direction");

  std::vector<DirMatrices> mats;
  std::vector<int> n(d), N(d);
  for (int i = 0; i < d; ++i) {
    mats.push_back(dir_matrices(spaces[i], Kind::l2, oversample, {}));
    n[i] = static_cast<int>(mats[i].nodes.size());
    N[i] = spaces[i].dimension();
  }

  // Sample the value tensor, last direction fastest.
  std::size_t total = 1;
  for (int i = 0; i < d; ++i)
    total *= n[i];
  std::vector<double> data(total);
  std::vector<int> idx(d, 0);
  std::vector<double> point(d);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int i = d - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(rem % n[i]);
      rem /= n[i];
    }
    for (int i = 0; i < d; ++i)
      point[i] = mats[i].nodes[idx[i]];
    data[flat] = value(point);
  }

  // Apply the projector along one mode at a time.
  std::vector<int> shape = n;
  for (int mode = 0; mode < d; ++mode) {
    std::size_t before = 1, after = 1;
    for (int i = 0; i < mode; ++i)
      before *= shape[i];
    for (int i = mode + 1; i < d; ++i)
      after *= shape[i];
    const Eigen::MatrixXd& V = mats[mode].val;
    std::vector<double> next(before * static_cast<std::size_t>(N[mode]) * after, 0.0);
    for (std::size_t bo = 0; bo < before; ++bo)
      for (std::size_t af = 0; af < after; ++af)
        for (int out_i = 0; out_i < N[mode]; ++out_i) {
          double acc = 0;
          for (int in_i = 0; in_i < shape[mode]; ++in_i)
            acc += V(out_i, in_i) * data[(bo * shape[mode] + in_i) * after + af];
          next[(bo * N[mode] + out_i) * after + af] = acc;
        }
    data = std::move(next);
    shape[mode] = N[mode];
  }
  return data;
}

} // namespace splb
