#pragma once

#include <Eigen/Dense>
#include <vector>

namespace splb {

/// Symmetric banded matrix, lower triangle stored by rows:
/// entry (i, j) with 0 <= i - j <= bandwidth lives at data[i * (bw+1) + (i-j)].
class BandedSymMatrix {
public:
  BandedSymMatrix(int order, int bandwidth);

  int order() const { return n_; }
  int bandwidth() const { return bw_; }

  /// Mutable access to the stored lower-triangle entry; requires j <= i.
  double& lower(int i, int j);
  /// Symmetric read; zero outside the band.
  double get(int i, int j) const;

  Eigen::MatrixXd to_dense() const;

private:
  int n_, bw_;
  std::vector<double> data_;
};

struct SpdSolution {
  Eigen::VectorXd x;
  /// Cheap estimate from the extreme Cholesky pivots.
  double condition_estimate = 1;
};

/// Banded Cholesky solve; throws not-positive-definite (with the pivot index
/// in the message) when the matrix is not SPD.
SpdSolution solve_spd(const BandedSymMatrix& A, const Eigen::VectorXd& rhs);

struct KktSolution {
  Eigen::VectorXd x;
  Eigen::VectorXd multipliers;
  /// Rough estimate from the extreme LU pivots.
  double condition_estimate = 1;
};

/// Solves the bordered saddle system [A C^T; C 0] [x; y] = [f; g] by a dense
/// factorization.  A must be symmetric positive semidefinite on the kernel of
/// C for the result to be a minimizer; singular bordered systems throw
/// singular-system.
KktSolution solve_kkt(const BandedSymMatrix& A, const Eigen::MatrixXd& C, const Eigen::VectorXd& f,
                      const Eigen::VectorXd& g);

} // namespace splb
