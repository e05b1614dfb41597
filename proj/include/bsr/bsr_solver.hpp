#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "bsr/lp.hpp"

namespace bsr {

enum class BsrMode { Noiseless, Noisy };

struct BsrConfig {
  int iterations = 5;               // I, fixed; no early stopping
  double epsilon_scale = 1e-3;      // eps = epsilon_scale * ||x^(0)||_inf
  double epsilon_override = 0.0;    // > 0 forces a fixed eps
  BsrMode mode = BsrMode::Noiseless;
  double beta = 0.02;               // slack penalty, Noisy mode only
  // The inner LPs only need accuracy well below the reweighting epsilon, and
  // the dense normal equations cannot always deliver 1e-6 in double precision
  // on the larger instances; run them at a mildly relaxed tolerance.
  lp::LpSettings lp_settings{1e-6, 1e-5, 200};
};

struct BsrIterationRecord {
  int iteration = 0;
  Eigen::VectorXd x;                // pre-normalization estimate
  double tau = 0.0;
  double weighted_objective = 0.0;  // sum_i lambda_i |x_i| at this iteration's weights
  double surrogate = 0.0;           // sum_i log(|x_i| + eps)
  int support_size = 0;             // entries above 1e-4 * ||x||_inf
};

enum class BsrStatus { Converged, InfeasibleSigns };

struct BsrResult {
  BsrStatus status = BsrStatus::Converged;
  Eigen::VectorXd x_hat;  // unit l2 norm
  double tau_hat = 0.0;   // rescaled by the same factor as x_hat
  std::vector<BsrIterationRecord> history;
  std::string message;
};

// One reweighted-l1 iteration as an LP in epigraph form: variables
// (x_1..x_n, t_1..t_n, tau[, xi_1..xi_m]), objective sum_i lambda_i t_i
// (+ beta sum xi), rows t_i -/+ x_i >= 0 followed by the m sign-consistency
// rows y_i (phi_i^T x - tau) >= 1 (>= 1 - xi_i with xi >= 0 in Noisy mode).
lp::LinearProgram build_iteration_lp(const Eigen::MatrixXd& phi,
                                     const Eigen::VectorXi& signs,
                                     const Eigen::VectorXd& weights,
                                     BsrMode mode, double beta = 0.02);

// Equivalent positive/negative-part formulation with only the m sign rows:
// variables (u, v, tau[, xi]), u, v >= 0, x = u - v. Same optimal value and
// x-argmin as the epigraph form; much cheaper to solve, so the recovery loop
// uses this one.
lp::LinearProgram build_iteration_lp_split(const Eigen::MatrixXd& phi,
                                           const Eigen::VectorXi& signs,
                                           const Eigen::VectorXd& weights,
                                           BsrMode mode, double beta = 0.02);

// The full recovery loop: I reweighted-l1 LP solves with weight updates
// lambda_i = 1 / (|x_i| + eps), then l2 normalization of the final iterate
// and matching rescale of tau. In Noiseless mode LP infeasibility (sign
// flips in the data) is surfaced as status InfeasibleSigns.
BsrResult bsr_recover(const Eigen::MatrixXd& phi, const Eigen::VectorXi& signs,
                      const BsrConfig& config);

double surrogate_objective(const Eigen::VectorXd& x, double eps);

}  // namespace bsr
