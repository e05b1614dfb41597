#include "bsr/bsr_solver.hpp"

#include <cmath>

#include "bsr/errors.hpp"

namespace bsr {

namespace {

void check_inputs(const Eigen::MatrixXd& phi, const Eigen::VectorXi& signs,
                  const Eigen::VectorXd& weights) {
  if (phi.rows() != signs.size())
    throw DimensionMismatch("sign count does not match measurement rows");
  if (phi.cols() != weights.size())
    throw DimensionMismatch("weight count does not match signal length");
  if (!phi.allFinite()) throw DimensionMismatch("non-finite sensing matrix");
  bool pos = false, neg = false;
  for (Eigen::Index i = 0; i < signs.size(); ++i) {
    if (signs[i] == 1) pos = true;
    else if (signs[i] == -1) neg = true;
    else throw DimensionMismatch("signs must be +1 or -1");
  }
  if (!pos || !neg)
    throw DegenerateEncoding("measurements must contain both signs");
}

}  // namespace

lp::LinearProgram build_iteration_lp(const Eigen::MatrixXd& phi,
                                     const Eigen::VectorXi& signs,
                                     const Eigen::VectorXd& weights,
                                     BsrMode mode, double beta) {
  check_inputs(phi, signs, weights);
  const Eigen::Index n = phi.cols();
  const Eigen::Index m = phi.rows();
  const bool noisy = mode == BsrMode::Noisy;
  const Eigen::Index nv = 2 * n + 1 + (noisy ? m : 0);

  lp::LinearProgram lp;
  lp.objective_coeffs = Eigen::VectorXd::Zero(nv);
  lp.objective_coeffs.segment(n, n) = weights;
  if (noisy) lp.objective_coeffs.tail(m).setConstant(beta);

  lp.inequality_matrix = Eigen::MatrixXd::Zero(2 * n + m, nv);
  lp.inequality_rhs = Eigen::VectorXd::Zero(2 * n + m);
  for (Eigen::Index i = 0; i < n; ++i) {
    lp.inequality_matrix(2 * i, i) = -1.0;       // t_i - x_i >= 0
    lp.inequality_matrix(2 * i, n + i) = 1.0;
    lp.inequality_matrix(2 * i + 1, i) = 1.0;    // t_i + x_i >= 0
    lp.inequality_matrix(2 * i + 1, n + i) = 1.0;
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    const double y = static_cast<double>(signs[i]);
    lp.inequality_matrix.row(2 * n + i).head(n) = y * phi.row(i);
    lp.inequality_matrix(2 * n + i, 2 * n) = -y;  // tau column
    if (noisy) lp.inequality_matrix(2 * n + i, 2 * n + 1 + i) = 1.0;
    lp.inequality_rhs[2 * n + i] = 1.0;
  }

  lp.variable_bounds.assign(nv, lp::Bounds{});
  if (noisy)
    for (Eigen::Index i = 0; i < m; ++i)
      lp.variable_bounds[2 * n + 1 + i].lower = 0.0;
  return lp;
}

lp::LinearProgram build_iteration_lp_split(const Eigen::MatrixXd& phi,
                                           const Eigen::VectorXi& signs,
                                           const Eigen::VectorXd& weights,
                                           BsrMode mode, double beta) {
  check_inputs(phi, signs, weights);
  const Eigen::Index n = phi.cols();
  const Eigen::Index m = phi.rows();
  const bool noisy = mode == BsrMode::Noisy;
  const Eigen::Index nv = 2 * n + 1 + (noisy ? m : 0);

  lp::LinearProgram lp;
  lp.objective_coeffs = Eigen::VectorXd::Zero(nv);
  lp.objective_coeffs.head(n) = weights;
  lp.objective_coeffs.segment(n, n) = weights;
  if (noisy) lp.objective_coeffs.tail(m).setConstant(beta);

  lp.inequality_matrix = Eigen::MatrixXd::Zero(m, nv);
  lp.inequality_rhs = Eigen::VectorXd::Ones(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double y = static_cast<double>(signs[i]);
    lp.inequality_matrix.row(i).head(n) = y * phi.row(i);
    lp.inequality_matrix.row(i).segment(n, n) = -y * phi.row(i);
    lp.inequality_matrix(i, 2 * n) = -y;
    if (noisy) lp.inequality_matrix(i, 2 * n + 1 + i) = 1.0;
  }

  lp.variable_bounds.assign(nv, lp::Bounds{});
  for (Eigen::Index i = 0; i < 2 * n; ++i) lp.variable_bounds[i].lower = 0.0;
  if (noisy)
    for (Eigen::Index i = 0; i < m; ++i)
      lp.variable_bounds[2 * n + 1 + i].lower = 0.0;
  return lp;
}

double surrogate_objective(const Eigen::VectorXd& x, double eps) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    acc += std::log(std::abs(x[i]) + eps);
  return acc;
}

BsrResult bsr_recover(const Eigen::MatrixXd& phi, const Eigen::VectorXi& signs,
                      const BsrConfig& config) {
  const Eigen::Index n = phi.cols();
  if (config.iterations < 1) throw ConfigError("iteration count must be >= 1");
  Eigen::VectorXd weights = Eigen::VectorXd::Ones(n);
  check_inputs(phi, signs, weights);

  BsrResult res;
  Eigen::VectorXd x;
  double tau = 0.0;
  double eps = config.epsilon_override > 0.0 ? config.epsilon_override : 1.0;

  for (int p = 0; p < config.iterations; ++p) {
    // scaling the objective by 1/max(weights) leaves the argmin unchanged and
    // keeps the LP well conditioned when weights grow large
    const double wmax = weights.maxCoeff();
    lp::LinearProgram iter_lp = build_iteration_lp_split(
        phi, signs, weights / wmax, config.mode, config.beta / wmax);
    lp::LpSolution sol = lp::solve_lp(iter_lp, config.lp_settings);

    if (sol.status == lp::LpStatus::Infeasible) {
      if (config.mode == BsrMode::Noiseless) {
        res.status = BsrStatus::InfeasibleSigns;
        res.message =
            "sign constraints are infeasible (likely noise-induced flips); "
            "switch to Noisy mode";
        return res;
      }
      throw Error("relaxed sign LP reported infeasible: " + sol.message);
    }
    if (sol.status != lp::LpStatus::Optimal)
      throw Error("iteration LP not optimal: " + sol.message);

    x = sol.primal.head(n) - sol.primal.segment(n, n);
    tau = sol.primal[2 * n];

    if (p == 0 && config.epsilon_override <= 0.0) {
      const double scale = x.cwiseAbs().maxCoeff();
      if (scale > 0.0) eps = config.epsilon_scale * scale;
    }

    BsrIterationRecord rec;
    rec.iteration = p;
    rec.x = x;
    rec.tau = tau;
    rec.weighted_objective = weights.dot(x.cwiseAbs());
    rec.surrogate = surrogate_objective(x, eps);
    const double thresh = 1e-4 * x.cwiseAbs().maxCoeff();
    rec.support_size =
        static_cast<int>((x.cwiseAbs().array() > thresh).count());
    res.history.push_back(std::move(rec));

    weights = (x.cwiseAbs().array() + eps).inverse();
  }

  const double nrm = x.norm();
  res.x_hat = x / nrm;
  res.tau_hat = tau / nrm;
  res.status = BsrStatus::Converged;
  return res;
}

}  // namespace bsr
