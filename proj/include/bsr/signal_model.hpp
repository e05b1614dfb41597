#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "bsr/errors.hpp"

namespace bsr {

// Sparse point-source signal on a 1-D grid (cols == 1) or a square 2-D grid.
struct Spike {
  int row = 0;
  int col = 0;  // always 0 in 1-D
  double amplitude = 0.0;
};

struct SpikeTrain {
  int rows = 0;
  int cols = 1;
  std::vector<Spike> spikes;

  bool is_1d() const { return cols == 1; }
  Eigen::VectorXd dense_vector() const;   // row-major flattening
  Eigen::MatrixXd dense_image() const;
};

enum class KernelKind { Sinc, Gaussian, Custom };

// Low-pass response: a tap vector in 1-D (rows == 1) or an odd p x p mask in
// 2-D. Taps are normalized to unit peak; only relative amplitudes matter
// because recovery is up to scale.
struct BlurKernel {
  Eigen::MatrixXd taps;  // 1 x l_h for 1-D, p x p for 2-D
  KernelKind kind = KernelKind::Custom;
  double sigma = 0.0;    // Gaussian only

  bool is_1d() const { return taps.rows() == 1; }
  int length() const { return static_cast<int>(taps.cols()); }
};

// Dense operator: l_z x l_x linear-convolution Toeplitz matrix in 1-D, or the
// d^2 x (d+p-1)^2 patch masking operator in 2-D.
struct ConvolutionOperator {
  Eigen::MatrixXd matrix;
  int in_rows = 0, in_cols = 0;    // shape of the vectorized input
  int out_rows = 0, out_cols = 0;  // shape of the vectorized output
};

// s unique uniformly random locations; amplitudes from uniform[amp_lo, amp_hi].
// min_separation > 1 enforces a Chebyshev distance of at least that many grid
// cells between spikes (sources closer than the blur's resolution limit are
// not identifiable from one-bit data).
SpikeTrain make_spike_train(int rows, int cols, int s, std::uint64_t seed,
                            double amp_lo, double amp_hi,
                            int min_separation = 1);

// Hamming-windowed sinc of odd length l_h, normalized cutoff f_c, unit peak.
BlurKernel make_sinc_kernel(int l_h, double cutoff);

// p x p mask h(i,j) = exp(-(i^2+j^2)/(2 sigma^2)), center tap 1; p must be odd.
BlurKernel make_gaussian_kernel(int p, double sigma_h);

// 1-D Gaussian taps exp(-(n-c)^2/(2 sigma^2)), unit peak, odd length.
BlurKernel make_gaussian_kernel_1d(int l_h, double sigma_h);

// 1-D linear convolution matrix: (signal_len + l_h - 1) x signal_len.
ConvolutionOperator build_convolution_matrix(const BlurKernel& kernel,
                                             int signal_len);

// 2-D patch operator per the (d+p-1)^2 -> d^2 valid correlation.
ConvolutionOperator build_patch_operator(const BlurKernel& kernel, int d);

// z = H * dense(x); dimensions must agree with the operator.
Eigen::VectorXd apply_blur(const SpikeTrain& x, const ConvolutionOperator& op);

// Full-image blur: same-size correlation with zero padding of (p-1)/2.
Eigen::MatrixXd blur_image(const Eigen::MatrixXd& x, const BlurKernel& kernel);

}  // namespace bsr
