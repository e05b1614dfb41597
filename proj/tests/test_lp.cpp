#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>
#include <sstream>

#include "bsr/errors.hpp"
#include "bsr/lp.hpp"
#include "lp_oracle.hpp"

using namespace bsr;
using namespace bsr::lp;

namespace {

LinearProgram empty_rows(Eigen::Index n) {
  LinearProgram lp;
  lp.objective_coeffs = Eigen::VectorXd::Zero(n);
  lp.inequality_matrix.resize(0, n);
  lp.inequality_rhs.resize(0);
  lp.equality_matrix.resize(0, n);
  lp.equality_rhs.resize(0);
  return lp;
}

}  // namespace

TEST_CASE("single active constraint: min v s.t. v >= 1") {
  LinearProgram lp = empty_rows(1);
  lp.objective_coeffs << 1.0;
  lp.inequality_matrix = Eigen::MatrixXd::Ones(1, 1);
  lp.inequality_rhs = Eigen::VectorXd::Ones(1);
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.primal[0] == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(sol.objective_value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(sol.max_kkt_residual <= 1e-6);
}

TEST_CASE("separable: min v1+v2 s.t. v1 >= 2, v2 >= 3") {
  LinearProgram lp = empty_rows(2);
  lp.objective_coeffs << 1.0, 1.0;
  lp.inequality_matrix = Eigen::MatrixXd::Identity(2, 2);
  lp.inequality_rhs.resize(2);
  lp.inequality_rhs << 2.0, 3.0;
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.primal[0] == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(sol.primal[1] == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(sol.objective_value == doctest::Approx(5.0).epsilon(1e-7));
}

TEST_CASE("equality constraint with free variables") {
  // min v1 + 2 v2  s.t. v1 + v2 = 1, v1 >= 0, v2 >= 0 -> (1, 0)
  LinearProgram lp = empty_rows(2);
  lp.objective_coeffs << 1.0, 2.0;
  lp.equality_matrix = Eigen::MatrixXd::Ones(1, 2);
  lp.equality_rhs = Eigen::VectorXd::Ones(1);
  lp.variable_bounds = {{0.0, kInf}, {0.0, kInf}};
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.primal[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sol.primal[1] == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("infeasible constraints are reported with a reason") {
  LinearProgram lp = empty_rows(1);
  lp.objective_coeffs << 1.0;
  lp.inequality_matrix.resize(2, 1);
  lp.inequality_matrix << 1.0, -1.0;
  lp.inequality_rhs.resize(2);
  lp.inequality_rhs << 2.0, -1.0;  // v >= 2 and v <= 1
  LpSolution sol = solve_lp(lp);
  CHECK(sol.status == LpStatus::Infeasible);
  CHECK(!sol.message.empty());
}

TEST_CASE("unbounded objective is reported") {
  LinearProgram lp = empty_rows(1);
  lp.objective_coeffs << -1.0;
  lp.inequality_matrix = Eigen::MatrixXd::Ones(1, 1);
  lp.inequality_rhs = Eigen::VectorXd::Ones(1);  // v >= 1, min -v
  LpSolution sol = solve_lp(lp);
  CHECK(sol.status == LpStatus::Unbounded);
}

TEST_CASE("malformed problems are rejected") {
  LinearProgram lp = empty_rows(2);
  lp.objective_coeffs << 1.0, 1.0;
  SUBCASE("dimension mismatch") {
    lp.inequality_matrix = Eigen::MatrixXd::Ones(1, 3);
    lp.inequality_rhs = Eigen::VectorXd::Ones(1);
    CHECK_THROWS_AS(solve_lp(lp), MalformedProblem);
  }
  SUBCASE("NaN coefficient") {
    lp.objective_coeffs[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(solve_lp(lp), MalformedProblem);
  }
  SUBCASE("empty bound interval") {
    lp.variable_bounds = {{1.0, -1.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(solve_lp(lp), MalformedProblem);
  }
  SUBCASE("no variables") {
    lp.objective_coeffs.resize(0);
    CHECK_THROWS_AS(solve_lp(lp), MalformedProblem);
  }
}

TEST_CASE("random LPs match the vertex-enumeration oracle") {
  std::mt19937_64 gen(20260101);
  int solved = 0;
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + static_cast<int>(gen() % 4);      // 2..5
    const int mi = n + 1 + static_cast<int>(gen() % 5);
    LinearProgram lp = test::random_box_lp(gen, n, mi);
    const test::VertexOpt oracle = test::vertex_enumeration_opt(lp);
    REQUIRE(oracle.feasible_found);
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(oracle.objective).epsilon(1e-6));
    CHECK(verify_kkt(lp, sol) <= 1e-6);
    ++solved;
  }
  CHECK(solved == 60);
}

TEST_CASE("removing an inequality never increases the optimum") {
  std::mt19937_64 gen(7);
  for (int t = 0; t < 20; ++t) {
    LinearProgram lp = test::random_box_lp(gen, 3, 6);
    const double full = test::vertex_enumeration_opt(lp).objective;
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);

    LinearProgram relaxed = lp;
    relaxed.inequality_matrix = lp.inequality_matrix.topRows(5);
    relaxed.inequality_rhs = lp.inequality_rhs.head(5);
    LpSolution rsol = solve_lp(relaxed);
    REQUIRE(rsol.status == LpStatus::Optimal);
    CHECK(rsol.objective_value <= full + 1e-6);
  }
}

TEST_CASE("positive objective scaling scales the optimum, argmin unchanged") {
  std::mt19937_64 gen(11);
  LinearProgram lp = test::random_box_lp(gen, 4, 7);
  LpSolution a = solve_lp(lp);
  REQUIRE(a.status == LpStatus::Optimal);
  LinearProgram scaled = lp;
  scaled.objective_coeffs *= 3.5;
  LpSolution b = solve_lp(scaled);
  REQUIRE(b.status == LpStatus::Optimal);
  CHECK(b.objective_value == doctest::Approx(3.5 * a.objective_value).epsilon(1e-6));
  CHECK((a.primal - b.primal).lpNorm<Eigen::Infinity>() <= 1e-5);
}

TEST_CASE("identical inputs give bit-identical solutions") {
  std::mt19937_64 gen(42);
  LinearProgram lp = test::random_box_lp(gen, 5, 9);
  LpSolution a = solve_lp(lp);
  LpSolution b = solve_lp(lp);
  REQUIRE(a.status == LpStatus::Optimal);
  REQUIRE(a.primal.size() == b.primal.size());
  for (Eigen::Index j = 0; j < a.primal.size(); ++j)
    CHECK(a.primal[j] == b.primal[j]);
  CHECK(a.objective_value == b.objective_value);
}

TEST_CASE("verify_kkt flags a perturbed solution") {
  LinearProgram lp = empty_rows(1);
  lp.objective_coeffs << 1.0;
  lp.inequality_matrix = Eigen::MatrixXd::Ones(1, 1);
  lp.inequality_rhs = Eigen::VectorXd::Ones(1);
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(verify_kkt(lp, sol) <= 1e-6);
  sol.primal[0] += 0.1;  // walks off the active constraint
  CHECK(verify_kkt(lp, sol) > 1e-6);
}

TEST_CASE("plain-text dump round-trips the shape") {
  LinearProgram lp = empty_rows(2);
  lp.objective_coeffs << 1.0, -2.0;
  lp.inequality_matrix = Eigen::MatrixXd::Identity(2, 2);
  lp.inequality_rhs = Eigen::VectorXd::Zero(2);
  std::ostringstream os;
  lp.dump(os);
  CHECK(os.str().find("lp vars=2 ineq=2 eq=0") != std::string::npos);
}
