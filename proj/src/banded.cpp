#include "splb/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "splb/errors.hpp"

namespace splb {

BandedSymMatrix::BandedSymMatrix(int order, int bandwidth)
    : n_(order), bw_(bandwidth), data_(static_cast<std::size_t>(order) * (bandwidth + 1), 0.0) {
  if (order < 1)
    throw Error("invalid-data", "matrix order must be positive");
  if (bandwidth < 0 || bandwidth >= order)
    bw_ = std::max(0, std::min(bandwidth, order - 1));
}

double& BandedSymMatrix::lower(int i, int j) {
  return data_[static_cast<std::size_t>(i) * (bw_ + 1) + static_cast<std::size_t>(i - j)];
}

double BandedSymMatrix::get(int i, int j) const {
  if (j > i)
    std::swap(i, j);
  if (i - j > bw_)
    return 0.0;
  return data_[static_cast<std::size_t>(i) * (bw_ + 1) + static_cast<std::size_t>(i - j)];
}

Eigen::MatrixXd BandedSymMatrix::to_dense() const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = std::max(0, i - bw_); j <= i; ++j)
      M(i, j) = M(j, i) = get(i, j);
  return M;
}

SpdSolution solve_spd(const BandedSymMatrix& A, const Eigen::VectorXd& rhs) {
  const int n = A.order();
  const int bw = A.bandwidth();
  if (rhs.size() != n)
    throw Error("invalid-data", "right-hand side size mismatch");

  // In-place banded Cholesky A = L L^T.
  BandedSymMatrix L(n, bw);
  for (int j = 0; j < n; ++j) {
    double s = A.get(j, j);
    for (int m = std::max(0, j - bw); m < j; ++m)
      s -= L.get(j, m) * L.get(j, m);
    if (!(s > 0))
      throw Error("not-positive-definite", "nonpositive pivot at index " + std::to_string(j));
    const double ljj = std::sqrt(s);
    L.lower(j, j) = ljj;
    for (int i = j + 1; i <= std::min(n - 1, j + bw); ++i) {
      double t = A.get(i, j);
      for (int m = std::max(0, i - bw); m < j; ++m)
        t -= L.get(i, m) * L.get(j, m);
      L.lower(i, j) = t / ljj;
    }
  }

  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    double s = rhs(i);
    for (int m = std::max(0, i - bw); m < i; ++m)
      s -= L.get(i, m) * y(m);
    y(i) = s / L.get(i, i);
  }
  SpdSolution sol;
  sol.x.resize(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = y(i);
    for (int m = i + 1; m <= std::min(n - 1, i + bw); ++m)
      s -= L.get(m, i) * sol.x(m);
    sol.x(i) = s / L.get(i, i);
  }

  double dmin = L.get(0, 0), dmax = L.get(0, 0);
  for (int i = 1; i < n; ++i) {
    dmin = std::min(dmin, L.get(i, i));
    dmax = std::max(dmax, L.get(i, i));
  }
  sol.condition_estimate = (dmax / dmin) * (dmax / dmin);
  return sol;
}

KktSolution solve_kkt(const BandedSymMatrix& A, const Eigen::MatrixXd& C, const Eigen::VectorXd& f,
                      const Eigen::VectorXd& g) {
  const int n = A.order();
  const int m = static_cast<int>(C.rows());
  if (C.cols() != n || f.size() != n || g.size() != m)
    throw Error("invalid-data", "saddle system size mismatch");

  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + m, n + m);
  K.topLeftCorner(n, n) = A.to_dense();
  K.block(n, 0, m, n) = C;
  K.block(0, n, n, m) = C.transpose();
  Eigen::VectorXd rhs(n + m);
  rhs.head(n) = f;
  rhs.tail(m) = g;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
  if (!lu.isInvertible())
    throw Error("singular-system", "bordered system is singular (rank " + std::to_string(lu.rank()) +
                                       " of " + std::to_string(n + m) + ")");
  const Eigen::VectorXd sol = lu.solve(rhs);
  KktSolution out;
  out.x = sol.head(n);
  out.multipliers = sol.tail(m);
  const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
  out.condition_estimate = pivots.maxCoeff() / std::max(pivots.minCoeff(), 1e-300);
  return out;
}

} // namespace splb
