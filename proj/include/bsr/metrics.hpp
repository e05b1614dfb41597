#pragma once

#include <Eigen/Dense>
#include <set>

namespace bsr {

// dB sentinels for exact/zero cases, flagged explicitly in CSV output.
inline constexpr double kDbInfinity = 1e9;

struct EvalReport {
  double tpr = 0.0;
  double snr1_db = 0.0;
  double re_db = 0.0;
  double recon_snr_db = 0.0;
  int s_used = 0;
  double scale_factor = 0.0;
};

// Indices of the s largest |x_i|; entries below 1e-8 * ||x||_inf are treated
// as zero and excluded. Ties break toward the lower index.
std::set<Eigen::Index> top_s_support(const Eigen::VectorXd& x, int s);

std::set<Eigen::Index> support_of_spikes(const Eigen::VectorXd& x);

double tpr(const std::set<Eigen::Index>& truth,
           const std::set<Eigen::Index>& estimate);

// Least-squares scale alignment: c* = <x, xhat> / ||xhat||^2.
std::pair<Eigen::VectorXd, double> align_scale(const Eigen::VectorXd& x,
                                               const Eigen::VectorXd& x_hat);

// SNR over the correctly located spikes, on an already aligned estimate.
double snr1_db(const Eigen::VectorXd& x, const Eigen::VectorXd& x_hat_aligned,
               const std::set<Eigen::Index>& truth,
               const std::set<Eigen::Index>& estimate);

// Energy of the off-support part of the estimate relative to the truth.
double relative_error_db(const Eigen::VectorXd& x,
                         const Eigen::VectorXd& x_hat_aligned,
                         const std::set<Eigen::Index>& estimate);

double recon_snr_db(const Eigen::VectorXd& x,
                    const Eigen::VectorXd& x_hat_aligned);

// Full report: alignment, then TPR / SNR1 / RE / reconstruction SNR.
EvalReport evaluate(const Eigen::VectorXd& x_true, const Eigen::VectorXd& x_hat,
                    int s);

}  // namespace bsr
