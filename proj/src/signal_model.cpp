#include "bsr/signal_model.hpp"

#include <cmath>
#include <numbers>

#include "bsr/rng.hpp"

namespace bsr {

Eigen::VectorXd SpikeTrain::dense_vector() const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows) * cols);
  for (const auto& sp : spikes)
    v[static_cast<Eigen::Index>(sp.row) * cols + sp.col] += sp.amplitude;
  return v;
}

Eigen::MatrixXd SpikeTrain::dense_image() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  for (const auto& sp : spikes) m(sp.row, sp.col) += sp.amplitude;
  return m;
}

SpikeTrain make_spike_train(int rows, int cols, int s, std::uint64_t seed,
                            double amp_lo, double amp_hi, int min_separation) {
  const std::int64_t cells = static_cast<std::int64_t>(rows) * cols;
  if (s < 1 || s > cells)
    throw TooManySpikes("spike count must be in [1, grid cells]");
  if (min_separation < 1) min_separation = 1;

  Rng rng(seed);
  SpikeTrain st;
  st.rows = rows;
  st.cols = cols;
  st.spikes.reserve(s);
  long attempts = 0;
  const long max_attempts = 10000L * s + 10000L;
  while (static_cast<int>(st.spikes.size()) < s) {
    if (++attempts > max_attempts)
      throw TooManySpikes(
          "cannot place spikes: grid too small for the separation constraint");
    const auto idx = rng.below(static_cast<std::uint64_t>(cells));
    const int row = static_cast<int>(idx / cols);
    const int col = static_cast<int>(idx % cols);
    bool clear = true;
    for (const auto& sp : st.spikes) {
      const int dist = std::max(std::abs(sp.row - row), std::abs(sp.col - col));
      if (dist < min_separation) {
        clear = false;
        break;
      }
    }
    if (!clear) continue;
    Spike sp;
    sp.row = row;
    sp.col = col;
    sp.amplitude = rng.uniform(amp_lo, amp_hi);
    if (sp.amplitude == 0.0) sp.amplitude = 0.5 * (amp_lo + amp_hi);
    st.spikes.push_back(sp);
  }
  return st;
}

BlurKernel make_sinc_kernel(int l_h, double cutoff) {
  if (l_h < 1) throw EvenKernelSize("sinc kernel length must be >= 1");
  BlurKernel k;
  k.kind = KernelKind::Sinc;
  k.taps.resize(1, l_h);
  const double center = 0.5 * (l_h - 1);
  for (int n = 0; n < l_h; ++n) {
    const double t = 2.0 * cutoff * (n - center);
    const double sinc =
        t == 0.0 ? 1.0 : std::sin(std::numbers::pi * t) / (std::numbers::pi * t);
    const double hamming =
        l_h == 1 ? 1.0
                 : 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n / (l_h - 1));
    k.taps(0, n) = sinc * hamming;
  }
  k.taps /= k.taps.cwiseAbs().maxCoeff();  // unit peak
  return k;
}

BlurKernel make_gaussian_kernel(int p, double sigma_h) {
  if (p < 1 || p % 2 == 0)
    throw EvenKernelSize("Gaussian mask size must be odd and positive");
  if (sigma_h <= 0.0 && p > 1)
    throw EvenKernelSize("Gaussian sigma must be positive");
  BlurKernel k;
  k.kind = KernelKind::Gaussian;
  k.sigma = sigma_h;
  k.taps.resize(p, p);
  const int c = (p - 1) / 2;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      const double di = i - c, dj = j - c;
      k.taps(i, j) =
          p == 1 ? 1.0
                 : std::exp(-(di * di + dj * dj) / (2.0 * sigma_h * sigma_h));
    }
  return k;  // center tap is exp(0) = 1 already
}

BlurKernel make_gaussian_kernel_1d(int l_h, double sigma_h) {
  if (l_h < 1 || l_h % 2 == 0)
    throw EvenKernelSize("1-D Gaussian length must be odd and positive");
  if (sigma_h <= 0.0 && l_h > 1)
    throw EvenKernelSize("Gaussian sigma must be positive");
  BlurKernel k;
  k.kind = KernelKind::Gaussian;
  k.sigma = sigma_h;
  k.taps.resize(1, l_h);
  const int c = (l_h - 1) / 2;
  for (int n = 0; n < l_h; ++n) {
    const double d = n - c;
    k.taps(0, n) = l_h == 1 ? 1.0 : std::exp(-d * d / (2.0 * sigma_h * sigma_h));
  }
  return k;
}

ConvolutionOperator build_convolution_matrix(const BlurKernel& kernel,
                                             int signal_len) {
  if (!kernel.is_1d()) throw DimensionMismatch("1-D kernel expected");
  if (signal_len < 1) throw DimensionMismatch("signal length must be >= 1");
  const int l_h = kernel.length();
  const int l_z = signal_len + l_h - 1;
  ConvolutionOperator op;
  op.in_rows = signal_len;
  op.in_cols = 1;
  op.out_rows = l_z;
  op.out_cols = 1;
  op.matrix = Eigen::MatrixXd::Zero(l_z, signal_len);
  for (int j = 0; j < signal_len; ++j)
    for (int t = 0; t < l_h; ++t) op.matrix(j + t, j) = kernel.taps(0, t);
  return op;
}

ConvolutionOperator build_patch_operator(const BlurKernel& kernel, int d) {
  if (kernel.is_1d() && kernel.length() != 1)
    throw DimensionMismatch("2-D mask expected");
  const int p = static_cast<int>(kernel.taps.rows());
  if (d < 1) throw DimensionMismatch("patch size must be >= 1");
  const int e = d + p - 1;  // extended source patch side
  ConvolutionOperator op;
  op.in_rows = e;
  op.in_cols = e;
  op.out_rows = d;
  op.out_cols = d;
  op.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d) * d,
                                    static_cast<Eigen::Index>(e) * e);
  // z(u,v) = sum_{i,j} h(i,j) x_ext(u+i, v+j): valid correlation, row-major
  for (int u = 0; u < d; ++u)
    for (int v = 0; v < d; ++v) {
      const Eigen::Index r = static_cast<Eigen::Index>(u) * d + v;
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
          op.matrix(r, static_cast<Eigen::Index>(u + i) * e + (v + j)) =
              kernel.taps(i, j);
    }
  return op;
}

Eigen::VectorXd apply_blur(const SpikeTrain& x, const ConvolutionOperator& op) {
  if (x.rows != op.in_rows || x.cols != op.in_cols)
    throw DimensionMismatch("spike train shape does not match operator input");
  return op.matrix * x.dense_vector();
}

Eigen::MatrixXd blur_image(const Eigen::MatrixXd& x, const BlurKernel& kernel) {
  const int p = static_cast<int>(kernel.taps.rows());
  if (p != kernel.taps.cols() || p % 2 == 0)
    throw DimensionMismatch("odd square 2-D mask expected");
  const int half = (p - 1) / 2;
  const Eigen::Index rows = x.rows(), cols = x.cols();
  Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(rows + p - 1, cols + p - 1);
  padded.block(half, half, rows, cols) = x;
  Eigen::MatrixXd z(rows, cols);
  for (Eigen::Index u = 0; u < rows; ++u)
    for (Eigen::Index v = 0; v < cols; ++v) {
      double acc = 0.0;
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
          acc += kernel.taps(i, j) * padded(u + i, v + j);
      z(u, v) = acc;
    }
  return z;
}

}  // namespace bsr
