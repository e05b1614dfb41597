#include "bsr/baselines.hpp"

#include "bsr/errors.hpp"

namespace bsr {

Eigen::VectorXd oracle_recover(const Eigen::MatrixXd& phi,
                               const Eigen::VectorXd& y_fp,
                               const lp::LpSettings& settings) {
  if (phi.rows() != y_fp.size())
    throw DimensionMismatch("measurement length does not match phi rows");
  const Eigen::Index n = phi.cols();

  // Replace phi x = y by the equivalent reduced system from a rank-revealing
  // QR: redundant rows (m >= n) and numerically dependent directions of a
  // badly conditioned low-pass phi would otherwise make the interior-point
  // normal equations singular.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
  // Generous rank cutoff: directions this weak carry no usable signal and
  // only poison the LP's conditioning.
  qr.setThreshold(1e-8);
  qr.compute(phi);
  const Eigen::Index r = qr.rank();
  if (r == 0) throw Error("oracle LP degenerate: phi is numerically zero");
  const Eigen::VectorXd qty = qr.householderQ().transpose() * y_fp;
  const double tail = (phi.rows() > r) ? qty.tail(phi.rows() - r).norm() : 0.0;
  if (tail > 1e-5 * (1.0 + y_fp.norm()))
    throw Error("oracle LP infeasible: inconsistent full-precision measurements");
  if (r == n) {
    // Full column rank: the constraint set is a single point, so the l1
    // objective is moot and the program's solution is the direct solve.
    Eigen::VectorXd x = qr.solve(y_fp);
    return x;
  }
  Eigen::MatrixXd rmat = qr.matrixR().topRows(r).triangularView<Eigen::Upper>();
  Eigen::MatrixXd eq = rmat * qr.colsPermutation().transpose();
  Eigen::VectorXd rhs = qty.head(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const double scale = eq.row(i).norm();
    if (scale > 0) {
      eq.row(i) /= scale;
      rhs[i] /= scale;
    }
  }
  const Eigen::Index m = eq.rows();

  // variables (x, t): min sum t, -t <= x <= t, phi x = y_fp
  lp::LinearProgram lp;
  lp.objective_coeffs = Eigen::VectorXd::Zero(2 * n);
  lp.objective_coeffs.tail(n).setOnes();
  lp.inequality_matrix = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  lp.inequality_rhs = Eigen::VectorXd::Zero(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    lp.inequality_matrix(2 * i, i) = -1.0;  // t_i - x_i >= 0
    lp.inequality_matrix(2 * i, n + i) = 1.0;
    lp.inequality_matrix(2 * i + 1, i) = 1.0;
    lp.inequality_matrix(2 * i + 1, n + i) = 1.0;
  }
  lp.equality_matrix = Eigen::MatrixXd::Zero(m, 2 * n);
  lp.equality_matrix.leftCols(n) = eq;
  lp.equality_rhs = rhs;
  lp.variable_bounds.assign(2 * n, lp::Bounds{});
  for (Eigen::Index i = 0; i < n; ++i) lp.variable_bounds[n + i].lower = 0.0;

  lp::LpSolution sol = lp::solve_lp(lp, settings);
  if (sol.status != lp::LpStatus::Optimal)
    throw Error("oracle LP not optimal (" + std::string(lp::to_string(sol.status)) +
                "): inconsistent full-precision measurements; " + sol.message);
  return sol.primal.head(n);
}

}  // namespace bsr
