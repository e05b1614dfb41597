#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <set>

#include "bsr/metrics.hpp"

using namespace bsr;

TEST_CASE("top_s_support picks the s largest magnitudes") {
  Eigen::VectorXd x(6);
  x << 0.1, -5.0, 0.0, 3.0, -0.2, 4.0;
  CHECK(top_s_support(x, 3) == std::set<Eigen::Index>{1, 3, 5});
  CHECK(top_s_support(x, 1) == std::set<Eigen::Index>{1});
  // near-zero entries never enter the support even when s is generous
  Eigen::VectorXd y(4);
  y << 2.0, 1e-12, 0.0, -1.0;
  CHECK(top_s_support(y, 4) == std::set<Eigen::Index>{0, 3});
}

TEST_CASE("ties break toward the lower index") {
  Eigen::VectorXd x(4);
  x << 1.0, -1.0, 1.0, 0.5;
  CHECK(top_s_support(x, 2) == std::set<Eigen::Index>{0, 1});
}

TEST_CASE("tpr is the exact hit fraction") {
  const std::set<Eigen::Index> truth{1, 4, 9};
  CHECK(tpr(truth, {1, 4, 9}) == 1.0);
  CHECK(tpr(truth, {1, 4, 8}) == doctest::Approx(2.0 / 3.0));
  CHECK(tpr(truth, {}) == 0.0);
  CHECK(tpr({}, {1}) == 0.0);
}

TEST_CASE("align_scale is the least-squares factor") {
  Eigen::VectorXd x(3), xh(3);
  x << 2.0, 4.0, -6.0;
  xh << 1.0, 2.0, -3.0;
  auto [aligned, c] = align_scale(x, xh);
  CHECK(c == doctest::Approx(2.0));
  CHECK((aligned - x).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("metrics are invariant to positive rescaling of the estimate") {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(50);
  x[7] = 3.0;
  x[21] = -2.0;
  x[40] = 1.5;
  Eigen::VectorXd xh = x;
  xh[7] = 2.8;
  xh[13] = 0.4;  // one spurious entry
  const EvalReport a = evaluate(x, xh, 3);
  const EvalReport b = evaluate(x, 7.3 * xh, 3);
  CHECK(a.tpr == b.tpr);
  CHECK(a.snr1_db == doctest::Approx(b.snr1_db).epsilon(1e-9));
  CHECK(a.re_db == doctest::Approx(b.re_db).epsilon(1e-9));
  CHECK(a.recon_snr_db == doctest::Approx(b.recon_snr_db).epsilon(1e-9));
  CHECK(b.scale_factor == doctest::Approx(a.scale_factor / 7.3).epsilon(1e-9));
}

TEST_CASE("an exact estimate hits the dB sentinels") {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(10);
  x[2] = 1.0;
  x[8] = -2.0;
  const EvalReport rep = evaluate(x, 0.5 * x, 2);
  CHECK(rep.tpr == 1.0);
  CHECK(rep.snr1_db == kDbInfinity);
  CHECK(rep.re_db == -kDbInfinity);
  CHECK(rep.recon_snr_db == kDbInfinity);
}

TEST_CASE("spurious energy shows up in RE, not SNR1") {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(20);
  x[3] = 2.0;
  Eigen::VectorXd xh = x;
  xh[15] = 0.5;
  const EvalReport rep = evaluate(x, xh, 1);
  CHECK(rep.tpr == 1.0);
  CHECK(rep.re_db < 0.0);         // finite, below the signal energy
  CHECK(rep.re_db > -kDbInfinity);
}
