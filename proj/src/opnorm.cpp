#include "splb/opnorm.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <vector>

#include "splb/errors.hpp"
#include "splb/quadrature.hpp"

namespace splb {

namespace {

// Integration-to-node matrix on the reference cell (0,1): entry (a,b) is the
// integral from 0 to node_a of the Lagrange polynomial through the Gauss
// nodes that is 1 at node_b.  Exact for polynomials of degree < g.
Eigen::MatrixXd reference_subintegrals(const GaussRule& ref) {
  const int g = static_cast<int>(ref.nodes.size());
  // Barycentric weights of the Gauss nodes.
  std::vector<double> bary(g, 1.0);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      if (j != i)
        bary[i] /= (ref.nodes[i] - ref.nodes[j]);

  GaussRule fine = gauss_legendre(g + 2);
  for (std::size_t q = 0; q < fine.nodes.size(); ++q) {
    fine.nodes[q] = 0.5 * (fine.nodes[q] + 1.0);
    fine.weights[q] *= 0.5;
  }
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(g, g);
  for (int a = 0; a < g; ++a) {
    const double upper = ref.nodes[a];
    for (std::size_t q = 0; q < fine.nodes.size(); ++q) {
      const double x = upper * fine.nodes[q];
      const double w = upper * fine.weights[q];
      for (int b = 0; b < g; ++b) {
        // Lagrange basis polynomial through the Gauss nodes, 1 at node b.
        double lb = bary[b];
        for (int j = 0; j < g; ++j)
          if (j != b)
            lb *= (x - ref.nodes[j]);
        S(a, b) += w * lb;
      }
    }
  }
  return S;
}

} // namespace

ConstantEstimate estimate_constant(const SplineSpace& space, int r, int grid) {
  if (r < 0)
    throw Error("invalid-order", "derivative order must be nonnegative");
  if (grid < 200)
    throw Error("resolution", "operator-norm estimate needs at least 200 grid nodes");

  const KnotSequence& knots = space.knots();
  const int p = space.degree();
  const int E = knots.n_elements();
  const int g = std::max(p + 2, 8);
  const int subcells = std::max(1, (grid + E * g - 1) / (E * g));
  const int n = E * subcells * g;
  const int N = space.dimension();

  // Map Gauss nodes to (0,1) once; reuse for every subcell.
  GaussRule ref = gauss_legendre(g);
  for (int i = 0; i < g; ++i) {
    ref.nodes[i] = 0.5 * (ref.nodes[i] + 1.0);
    ref.weights[i] *= 0.5;
  }
  const Eigen::MatrixXd S_ref = reference_subintegrals(ref);

  Eigen::VectorXd x(n), w(n);
  std::vector<double> cell_left(E * subcells), cell_width(E * subcells);
  std::vector<int> elem_of_node(n);
  {
    int c = 0, i = 0;
    for (int e = 0; e < E; ++e) {
      const double a = knots.breakpoints()[e];
      const double b = knots.breakpoints()[e + 1];
      const double dx = (b - a) / subcells;
      for (int s = 0; s < subcells; ++s, ++c) {
        cell_left[c] = a + s * dx;
        cell_width[c] = dx;
        for (int j = 0; j < g; ++j, ++i) {
          x(i) = cell_left[c] + dx * ref.nodes[j];
          w(i) = dx * ref.weights[j];
          elem_of_node[i] = e;
        }
      }
    }
  }

  // Sampled basis and its exact Gram (degree 2p < 2g keeps the rule exact).
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, N);
  for (int i = 0; i < n; ++i) {
    const BasisValues bv = space.eval_basis_on_element(elem_of_node[i], x(i), 0);
    for (std::size_t j = 0; j < bv.values.size(); ++j)
      B(i, bv.first_index + j) = bv.values[j];
  }
  const Eigen::MatrixXd M = B.transpose() * w.asDiagonal() * B;
  const Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success)
    throw Error("not-positive-definite", "sampled Gram matrix is not positive definite");

  // Left-integration matrix: full weights of earlier subcells plus the
  // in-cell Lagrange subintegrals.
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  {
    Eigen::RowVectorXd prefix = Eigen::RowVectorXd::Zero(n);
    for (int c = 0; c < E * subcells; ++c) {
      const int lo = c * g;
      for (int a = 0; a < g; ++a)
        K.row(lo + a) = prefix;
      K.block(lo, lo, g, g) = cell_width[c] * S_ref;
      for (int j = 0; j < g; ++j)
        prefix(lo + j) = w(lo + j);
    }
  }

  // A = W^{1/2} (I - P) K^r W^{-1/2} with P the weighted projector onto the
  // sampled basis; the largest singular value of A is the weighted norm.
  Eigen::MatrixXd Kr = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < r; ++i)
    Kr = K * Kr;
  const Eigen::MatrixXd PKr = B * llt.solve(B.transpose() * w.asDiagonal() * Kr);
  Eigen::MatrixXd A = Kr - PKr;
  const Eigen::VectorXd ws = w.array().sqrt();
  A = ws.asDiagonal() * A * ws.cwiseInverse().asDiagonal();

  ConstantEstimate out;
  out.t = space.smoothness() + 1;
  out.r = r;
  out.grid = n;
  out.value = Eigen::BDCSVD<Eigen::MatrixXd>(A).singularValues()(0);
  return out;
}

} // namespace splb
