#include "bsr/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bsr/rng.hpp"

namespace bsr {

SensingEnsemble make_sensing_ensemble(Eigen::Index m, Eigen::Index l_z,
                                      std::uint64_t seed) {
  if (m < 1 || l_z < 1)
    throw DimensionMismatch("sensing ensemble dimensions must be positive");
  SensingEnsemble e;
  e.seed = seed;
  e.matrix.resize(m, l_z);
  Rng rng(seed);
  // row-major fill so the stream order is independent of Eigen's layout
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < l_z; ++j)
      e.matrix(i, j) = static_cast<double>(rng.sign());
  return e;
}

namespace {

BinaryMeasurements encode_impl(const Eigen::VectorXd& z,
                               const SensingEnsemble& A, double tau,
                               const GaussianNoise* noise) {
  if (A.l_z() != z.size())
    throw DimensionMismatch("projection width does not match signal length");
  const Eigen::VectorXd proj = A.matrix * z;

  BinaryMeasurements out;
  out.sensing_seed = A.seed;
  out.true_threshold = tau;
  out.signs.resize(proj.size());

  Eigen::VectorXd w = Eigen::VectorXd::Zero(proj.size());
  if (noise != nullptr && noise->sigma != 0.0) {
    Rng rng(noise->seed);
    for (Eigen::Index i = 0; i < w.size(); ++i)
      w[i] = noise->sigma * rng.normal();
    out.noise = *noise;
  } else if (noise != nullptr) {
    out.noise = *noise;
  }

  int flips = 0;
  bool saw_pos = false, saw_neg = false;
  for (Eigen::Index i = 0; i < proj.size(); ++i) {
    const double clean = proj[i] - tau;
    const double noisy = clean + w[i];
    const int sign = noisy >= 0.0 ? 1 : -1;  // sgn(0) := +1
    out.signs[i] = sign;
    if ((clean >= 0.0 ? 1 : -1) != sign) ++flips;
    (sign > 0 ? saw_pos : saw_neg) = true;
  }
  out.sign_flips = flips;
  if (!saw_pos || !saw_neg)
    throw DegenerateEncoding(
        "all measurements mapped to the same sign; re-choose the threshold");
  return out;
}

}  // namespace

BinaryMeasurements encode(const Eigen::VectorXd& z, const SensingEnsemble& A,
                          double tau) {
  return encode_impl(z, A, tau, nullptr);
}

BinaryMeasurements encode_noisy(const Eigen::VectorXd& z,
                                const SensingEnsemble& A, double tau,
                                const GaussianNoise& noise) {
  return encode_impl(z, A, tau, &noise);
}

double choose_threshold(const Eigen::VectorXd& projections,
                        const ThresholdPolicy& policy) {
  if (projections.size() < 2)
    throw ConstantProjections("need at least two projections");
  const double lo = projections.minCoeff();
  const double hi = projections.maxCoeff();
  if (lo == hi) throw ConstantProjections("projections are constant");

  if (std::holds_alternative<FixedPolicy>(policy)) {
    const double tau = std::get<FixedPolicy>(policy).tau;
    if (tau <= lo || tau >= hi)
      throw ConstantProjections(
          "fixed threshold lies outside the open projection range");
    return tau;
  }
  // median policy: split between the two order statistics nearest to the
  // middle that actually differ, so the threshold is strictly interior and
  // the sign counts are as balanced as ties permit
  std::vector<double> v(projections.data(), projections.data() + projections.size());
  std::sort(v.begin(), v.end());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());
  const std::ptrdiff_t mid = n / 2;
  std::ptrdiff_t best = -1;
  for (std::ptrdiff_t i = 0; i + 1 < n; ++i) {
    if (v[i] < v[i + 1] &&
        (best < 0 || std::abs(i + 1 - mid) < std::abs(best + 1 - mid)))
      best = i;
  }
  return 0.5 * (v[best] + v[best + 1]);
}

double input_snr_db(const Eigen::VectorXd& margins, const Eigen::VectorXd& w) {
  const double num = margins.squaredNorm();
  const double den = w.squaredNorm();
  if (den == 0.0) return kSnrInfinity;
  return 10.0 * std::log10(num / den);
}

double calibrate_sigma(double target_snr_db, const Eigen::VectorXd& margins) {
  const double ratio = std::pow(10.0, target_snr_db / 10.0);
  return std::sqrt(margins.squaredNorm() /
                   (static_cast<double>(margins.size()) * ratio));
}

}  // namespace bsr
