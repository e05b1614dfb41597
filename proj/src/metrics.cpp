#include "bsr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace bsr {

std::set<Eigen::Index> top_s_support(const Eigen::VectorXd& x, int s) {
  std::vector<Eigen::Index> idx(x.size());
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  // stable under ties: larger magnitude first, then lower index
  std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(x[a]), mb = std::abs(x[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  });
  const double floor = 1e-8 * x.cwiseAbs().maxCoeff();
  std::set<Eigen::Index> out;
  for (Eigen::Index k = 0; k < std::min<Eigen::Index>(s, x.size()); ++k) {
    if (std::abs(x[idx[k]]) <= floor) break;
    out.insert(idx[k]);
  }
  return out;
}

std::set<Eigen::Index> support_of_spikes(const Eigen::VectorXd& x) {
  std::set<Eigen::Index> out;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) out.insert(i);
  return out;
}

double tpr(const std::set<Eigen::Index>& truth,
           const std::set<Eigen::Index>& estimate) {
  if (truth.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto i : truth) hits += estimate.count(i);
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::pair<Eigen::VectorXd, double> align_scale(const Eigen::VectorXd& x,
                                               const Eigen::VectorXd& x_hat) {
  const double denom = x_hat.squaredNorm();
  const double c = denom == 0.0 ? 0.0 : x.dot(x_hat) / denom;
  return {c * x_hat, c};
}

namespace {

double ratio_db(double num, double den, double zero_den_sentinel) {
  if (den == 0.0) return zero_den_sentinel;
  if (num == 0.0) return -kDbInfinity;
  return 10.0 * std::log10(num / den);
}

}  // namespace

double snr1_db(const Eigen::VectorXd& x, const Eigen::VectorXd& x_hat_aligned,
               const std::set<Eigen::Index>& truth,
               const std::set<Eigen::Index>& estimate) {
  double num = 0.0, den = 0.0;
  for (const auto i : truth) {
    if (!estimate.count(i)) continue;
    num += x[i] * x[i];
    const double d = x[i] - x_hat_aligned[i];
    den += d * d;
  }
  return ratio_db(num, den, kDbInfinity);
}

double relative_error_db(const Eigen::VectorXd& x,
                         const Eigen::VectorXd& x_hat_aligned,
                         const std::set<Eigen::Index>& estimate) {
  double spurious = 0.0;
  for (Eigen::Index i = 0; i < x_hat_aligned.size(); ++i) {
    if (estimate.count(i)) continue;
    spurious += x_hat_aligned[i] * x_hat_aligned[i];
  }
  return ratio_db(spurious, x.squaredNorm(), kDbInfinity);
}

double recon_snr_db(const Eigen::VectorXd& x,
                    const Eigen::VectorXd& x_hat_aligned) {
  const double err = (x - x_hat_aligned).squaredNorm();
  if (err == 0.0) return kDbInfinity;
  return 10.0 * std::log10(x.squaredNorm() / err);
}

EvalReport evaluate(const Eigen::VectorXd& x_true, const Eigen::VectorXd& x_hat,
                    int s) {
  EvalReport rep;
  rep.s_used = s;
  auto [aligned, c] = align_scale(x_true, x_hat);
  rep.scale_factor = c;
  const auto truth = top_s_support(x_true, s);
  const auto est = top_s_support(x_hat, s);
  rep.tpr = tpr(truth, est);
  rep.snr1_db = snr1_db(x_true, aligned, truth, est);
  rep.re_db = relative_error_db(x_true, aligned, est);
  rep.recon_snr_db = recon_snr_db(x_true, aligned);
  return rep;
}

}  // namespace bsr
