#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "bsr/acquisition.hpp"
#include "bsr/bsr_solver.hpp"
#include "bsr/signal_model.hpp"

namespace bsr {

// Non-overlapping d x d tiling of the blurred image; when l_z is not a
// multiple of d the trailing origins are shifted back so the final patches
// still have full size (overlapped shift).
struct PatchGrid {
  int image_size = 0;   // l_z, square
  int patch_size = 0;   // d
  int kernel_size = 0;  // p, odd
  std::vector<std::pair<int, int>> origins;  // (row, col) in z coordinates

  int extended_size() const { return patch_size + kernel_size - 1; }
};

PatchGrid make_patch_grid(int l_z, int d, int p);

// Vectorized (row-major) d x d patches of z, one per grid origin.
std::vector<Eigen::VectorXd> decompose(const Eigen::MatrixXd& z,
                                       const PatchGrid& grid);

struct PatchMeasurements {
  int origin_row = 0, origin_col = 0;
  BinaryMeasurements meas;   // signs empty when the patch is degenerate
  bool tau_redrawn = false;  // fixed threshold was degenerate, median used
  bool degenerate = false;   // constant projections; no usable measurements
  int uniform_sign = 0;      // the single sign seen when degenerate
};

// One-bit acquisition of a single extended source patch through the mask
// operator: y_k = sgn(a_k^T H x - tau). Falls back to a per-patch median
// threshold when the configured tau yields a single sign, and marks the
// patch degenerate when even that is impossible (constant projections).
PatchMeasurements acquire_patch(const Eigen::VectorXd& x_patch,
                                const ConvolutionOperator& op,
                                const SensingEnsemble& ensemble, double tau);

// Acquire every patch of the image: the ground truth is zero-padded by
// (p-1)/2, extended patches are cut at each grid origin, and each patch gets
// its own sensing matrix derived from sensing_seed (or a shared one).
std::vector<PatchMeasurements> acquire_image(const Eigen::MatrixXd& x_true,
                                             const BlurKernel& kernel, int d,
                                             Eigen::Index m, double tau,
                                             std::uint64_t sensing_seed,
                                             bool shared_ensemble = false);

struct PatchDiagnostic {
  int origin_row = 0, origin_col = 0;
  BsrStatus status = BsrStatus::Converged;
  bool skipped = false;  // degenerate or failed; contributed zeros
  std::string message;
};

struct RecoveredImage {
  Eigen::MatrixXd image;        // l_x x l_x estimate (cropped)
  Eigen::MatrixXd count;        // per-pixel contribution count (cropped)
  std::vector<PatchDiagnostic> diagnostics;
  int failed_patches = 0;
};

// Independent per-patch recovery followed by count-weighted stitching over
// the (p-1)-pixel overlap bands. Each patch estimate is divided by its own
// recovered threshold before averaging: the encoder used one shared true
// threshold, so x_hat / tau_hat puts every patch on a common scale. The
// remaining global factor is resolved only at metric time.
RecoveredImage recover_image(const std::vector<PatchMeasurements>& patches,
                             const BlurKernel& kernel, int l_z, int d,
                             const BsrConfig& config, int jobs = 1);

}  // namespace bsr
