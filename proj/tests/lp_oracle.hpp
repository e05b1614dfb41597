// Brute-force LP oracle for tests: enumerate every vertex formed by n active
// constraints (inequality rows plus box bounds), keep the feasible ones, and
// return the best objective. Exponential, so only for tiny instances.
#pragma once

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "bsr/lp.hpp"

namespace bsr::test {

struct VertexOpt {
  double objective = std::numeric_limits<double>::infinity();
  Eigen::VectorXd argmin;
  bool feasible_found = false;
};

inline VertexOpt vertex_enumeration_opt(const lp::LinearProgram& lp,
                                        double feas_tol = 1e-9) {
  const Eigen::Index n = lp.num_vars();
  const Eigen::Index mi = lp.num_inequalities();

  // all constraints as rows a^T v >= r (bounds included)
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  for (Eigen::Index i = 0; i < mi; ++i) {
    rows.push_back(lp.inequality_matrix.row(i).transpose());
    rhs.push_back(lp.inequality_rhs[i]);
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const lp::Bounds& b = lp.variable_bounds[j];
    if (std::isfinite(b.lower)) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e[j] = 1.0;
      rows.push_back(e);
      rhs.push_back(b.lower);
    }
    if (std::isfinite(b.upper)) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e[j] = -1.0;
      rows.push_back(e);
      rhs.push_back(-b.upper);
    }
  }
  const int total = static_cast<int>(rows.size());

  VertexOpt best;
  std::vector<int> pick(n);
  // iterate over all n-subsets of the constraint rows
  for (int j = 0; j < static_cast<int>(n); ++j) pick[j] = j;
  auto advance = [&]() -> bool {
    int j = static_cast<int>(n) - 1;
    while (j >= 0 && pick[j] == total - static_cast<int>(n) + j) --j;
    if (j < 0) return false;
    ++pick[j];
    for (int k = j + 1; k < static_cast<int>(n); ++k) pick[k] = pick[k - 1] + 1;
    return true;
  };
  do {
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      A.row(j) = rows[pick[j]].transpose();
      b[j] = rhs[pick[j]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible()) continue;
    Eigen::VectorXd v = lu.solve(b);
    bool ok = true;
    for (int i = 0; i < total && ok; ++i)
      ok = rows[i].dot(v) >= rhs[i] - feas_tol;
    if (!ok) continue;
    best.feasible_found = true;
    const double obj = lp.objective_coeffs.dot(v);
    if (obj < best.objective) {
      best.objective = obj;
      best.argmin = v;
    }
  } while (advance());
  return best;
}

// Random feasible LP with box bounds: a random interior point guarantees a
// nonempty feasible set, the box guarantees boundedness.
inline lp::LinearProgram random_box_lp(std::mt19937_64& gen, int n, int mi) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> box(1.0, 10.0);
  std::uniform_real_distribution<double> slack(0.0, 3.0);

  lp::LinearProgram lp;
  lp.objective_coeffs = Eigen::VectorXd::NullaryExpr(n, [&] { return coef(gen); });
  lp.variable_bounds.resize(n);
  Eigen::VectorXd v0(n);
  for (int j = 0; j < n; ++j) {
    const double half = box(gen);
    lp.variable_bounds[j] = {-half, half};
    v0[j] = coef(gen) / 2.0 * half / 2.0;
  }
  lp.inequality_matrix = Eigen::MatrixXd::NullaryExpr(mi, n, [&] { return coef(gen); });
  lp.inequality_rhs.resize(mi);
  for (int i = 0; i < mi; ++i)
    lp.inequality_rhs[i] = lp.inequality_matrix.row(i).dot(v0) - slack(gen);
  lp.equality_matrix.resize(0, n);
  lp.equality_rhs.resize(0);
  return lp;
}

}  // namespace bsr::test
