#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <variant>

#include "bsr/errors.hpp"

namespace bsr {

// Random +/-1 projection matrix, reconstructible bit-exactly from its seed.
struct SensingEnsemble {
  Eigen::MatrixXd matrix;  // m x l_z, entries in {+1, -1}
  std::uint64_t seed = 0;

  Eigen::Index m() const { return matrix.rows(); }
  Eigen::Index l_z() const { return matrix.cols(); }
};

SensingEnsemble make_sensing_ensemble(Eigen::Index m, Eigen::Index l_z,
                                      std::uint64_t seed);

struct GaussianNoise {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

// Sign measurements plus acquisition metadata. true_threshold is
// encoder-private: the decoder side must never read it.
struct BinaryMeasurements {
  Eigen::VectorXi signs;  // entries in {+1, -1}, never all equal
  std::uint64_t sensing_seed = 0;
  double true_threshold = 0.0;  // encoder-private
  std::optional<GaussianNoise> noise;
  int sign_flips = 0;  // |F| relative to the noiseless encoding
};

// y_i = sgn((A z)_i - tau), with sgn(0) == +1. Throws DegenerateEncoding when
// every sign comes out equal (the encoder must re-choose tau).
BinaryMeasurements encode(const Eigen::VectorXd& z, const SensingEnsemble& A,
                          double tau);

// As encode but with i.i.d. Gaussian noise added before quantization; the
// realized sign-flip count relative to the noiseless encoding is recorded.
BinaryMeasurements encode_noisy(const Eigen::VectorXd& z,
                                const SensingEnsemble& A, double tau,
                                const GaussianNoise& noise);

struct MedianPolicy {};
struct FixedPolicy {
  double tau;
};
using ThresholdPolicy = std::variant<MedianPolicy, FixedPolicy>;

// Returns a threshold strictly between the min and max projection, which
// guarantees mixed signs. Throws ConstantProjections otherwise.
double choose_threshold(const Eigen::VectorXd& projections,
                        const ThresholdPolicy& policy);

// 10 log10(||A z - tau 1||^2 / ||w||^2) on pre-quantization quantities.
// Returns +kSnrInfinity when the noise vector is exactly zero.
double input_snr_db(const Eigen::VectorXd& margins, const Eigen::VectorXd& w);

inline constexpr double kSnrInfinity = 1e9;

// Noise sigma that hits the target input SNR in expectation:
// E||w||^2 = m sigma^2.
double calibrate_sigma(double target_snr_db, const Eigen::VectorXd& margins);

}  // namespace bsr
