#pragma once

#include <Eigen/Dense>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "bsr/errors.hpp"

namespace bsr::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Bounds {
  double lower = -kInf;
  double upper = kInf;
};

// Dense LP in the convention
//
//   min  c^T v
//   s.t. G v >= h          (inequality_matrix / inequality_rhs)
//        E v  = b          (equality_matrix / equality_rhs, possibly empty)
//        l <= v <= u       (per-variable, possibly infinite)
//
// Immutable after construction by convention; validate() checks shape
// consistency and rejects NaN/Inf coefficients.
struct LinearProgram {
  Eigen::VectorXd objective_coeffs;
  Eigen::MatrixXd inequality_matrix;
  Eigen::VectorXd inequality_rhs;
  Eigen::MatrixXd equality_matrix;   // 0 x n when absent
  Eigen::VectorXd equality_rhs;
  std::vector<Bounds> variable_bounds;  // empty means all variables free

  Eigen::Index num_vars() const { return objective_coeffs.size(); }
  Eigen::Index num_inequalities() const { return inequality_matrix.rows(); }
  Eigen::Index num_equalities() const { return equality_matrix.rows(); }

  // Throws MalformedProblem on dimension mismatch, NaN/Inf entries, or an
  // empty lower > upper bound pair.
  void validate() const;

  // Plain-text dense dump for offline inspection.
  void dump(std::ostream& os) const;
};

struct LpSettings {
  double tol_feas = 1e-7;
  double tol_kkt = 1e-6;
  int max_iterations = 200;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  Eigen::VectorXd primal;
  double objective_value = 0.0;
  Eigen::VectorXd dual_inequality;  // multipliers for G v >= h, >= 0
  Eigen::VectorXd dual_equality;
  Eigen::VectorXd dual_lower;       // bound multipliers, >= 0
  Eigen::VectorXd dual_upper;
  double max_kkt_residual = 0.0;
  int iterations = 0;
  std::string message;              // reason when status != Optimal
};

// Primal-dual interior-point solve. Deterministic for identical inputs and
// settings. Throws MalformedProblem for invalid input and IterationLimit when
// the iteration cap is reached without a verdict; an IterationLimit is never
// reported as Optimal.
LpSolution solve_lp(const LinearProgram& lp, const LpSettings& settings = {});

// Maximum KKT residual of (lp, sol): primal feasibility violation, dual
// feasibility violation, stationarity, and complementary slackness. Pure
// check, usable on any candidate solution.
double verify_kkt(const LinearProgram& lp, const LpSolution& sol);

}  // namespace bsr::lp
