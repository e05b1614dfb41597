#include "bsr/patch2d.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "bsr/rng.hpp"

namespace bsr {

PatchGrid make_patch_grid(int l_z, int d, int p) {
  if (l_z < 1 || d < 1 || d > l_z) throw BadDims("patch size must be in [1, l_z]");
  if (p < 1 || p % 2 == 0) throw BadDims("kernel size must be odd");
  PatchGrid g;
  g.image_size = l_z;
  g.patch_size = d;
  g.kernel_size = p;
  std::vector<int> starts;
  for (int i = 0; i + d <= l_z; i += d) starts.push_back(i);
  if (starts.back() + d < l_z) starts.push_back(l_z - d);  // overlapped shift
  for (int i : starts)
    for (int j : starts) g.origins.emplace_back(i, j);
  return g;
}

std::vector<Eigen::VectorXd> decompose(const Eigen::MatrixXd& z,
                                       const PatchGrid& grid) {
  if (z.rows() != grid.image_size || z.cols() != grid.image_size)
    throw BadDims("image does not match grid");
  const int d = grid.patch_size;
  std::vector<Eigen::VectorXd> out;
  out.reserve(grid.origins.size());
  for (const auto& [oi, oj] : grid.origins) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(d) * d);
    for (int u = 0; u < d; ++u)
      for (int w = 0; w < d; ++w)
        v[static_cast<Eigen::Index>(u) * d + w] = z(oi + u, oj + w);
    out.push_back(std::move(v));
  }
  return out;
}

PatchMeasurements acquire_patch(const Eigen::VectorXd& x_patch,
                                const ConvolutionOperator& op,
                                const SensingEnsemble& ensemble, double tau) {
  const Eigen::VectorXd z = op.matrix * x_patch;
  PatchMeasurements pm;
  try {
    pm.meas = encode(z, ensemble, tau);
    return pm;
  } catch (const DegenerateEncoding&) {
    // fixed threshold left a single sign; retry with the per-patch median
  }
  try {
    const double tau2 = choose_threshold(ensemble.matrix * z, MedianPolicy{});
    pm.meas = encode(z, ensemble, tau2);
    pm.tau_redrawn = true;
    return pm;
  } catch (const ConstantProjections&) {
    pm.degenerate = true;
    pm.uniform_sign = (ensemble.matrix * z - Eigen::VectorXd::Constant(
                           ensemble.m(), tau))[0] >= 0.0
                          ? 1
                          : -1;
    pm.meas.sensing_seed = ensemble.seed;
    pm.meas.true_threshold = tau;
    return pm;
  }
}

std::vector<PatchMeasurements> acquire_image(const Eigen::MatrixXd& x_true,
                                             const BlurKernel& kernel, int d,
                                             Eigen::Index m, double tau,
                                             std::uint64_t sensing_seed,
                                             bool shared_ensemble) {
  if (x_true.rows() != x_true.cols()) throw BadDims("square image expected");
  const int p = static_cast<int>(kernel.taps.rows());
  const int l = static_cast<int>(x_true.rows());
  const PatchGrid grid = make_patch_grid(l, d, p);
  const int e = grid.extended_size();
  const int half = (p - 1) / 2;

  Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(l + p - 1, l + p - 1);
  padded.block(half, half, l, l) = x_true;

  const ConvolutionOperator op = build_patch_operator(kernel, d);
  SensingEnsemble shared;
  if (shared_ensemble)
    shared = make_sensing_ensemble(m, static_cast<Eigen::Index>(d) * d,
                                   sensing_seed);

  std::vector<PatchMeasurements> out;
  out.reserve(grid.origins.size());
  for (std::size_t k = 0; k < grid.origins.size(); ++k) {
    const auto& [oi, oj] = grid.origins[k];
    Eigen::VectorXd xv(static_cast<Eigen::Index>(e) * e);
    for (int u = 0; u < e; ++u)
      for (int w = 0; w < e; ++w)
        xv[static_cast<Eigen::Index>(u) * e + w] = padded(oi + u, oj + w);

    const SensingEnsemble ens =
        shared_ensemble
            ? shared
            : make_sensing_ensemble(
                  m, static_cast<Eigen::Index>(d) * d,
                  Rng::derive(sensing_seed, k).next_u64());
    PatchMeasurements pm = acquire_patch(xv, op, ens, tau);
    pm.origin_row = oi;
    pm.origin_col = oj;
    out.push_back(std::move(pm));
  }
  return out;
}

RecoveredImage recover_image(const std::vector<PatchMeasurements>& patches,
                             const BlurKernel& kernel, int l_z, int d,
                             const BsrConfig& config, int jobs) {
  const int p = static_cast<int>(kernel.taps.rows());
  const int e = d + p - 1;
  const int half = (p - 1) / 2;
  const ConvolutionOperator op = build_patch_operator(kernel, d);

  struct PatchOut {
    Eigen::VectorXd x;  // e*e, zeros when skipped
    PatchDiagnostic diag;
  };

  auto solve_one = [&](const PatchMeasurements& pm) {
    PatchOut po;
    po.diag.origin_row = pm.origin_row;
    po.diag.origin_col = pm.origin_col;
    po.x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(e) * e);
    if (pm.degenerate) {
      po.diag.skipped = true;
      po.diag.message = "degenerate encoding (constant projections)";
      return po;
    }
    try {
      const SensingEnsemble ens = make_sensing_ensemble(
          pm.meas.signs.size(), static_cast<Eigen::Index>(d) * d,
          pm.meas.sensing_seed);
      const Eigen::MatrixXd phi = ens.matrix * op.matrix;
      BsrResult res = bsr_recover(phi, pm.meas.signs, config);
      po.diag.status = res.status;
      if (res.status == BsrStatus::Converged) {
        // Every patch saw the same true threshold, so x_hat / tau_hat is on a
        // common scale across patches (both are recovered up to one factor).
        const Eigen::VectorXd& xh = res.history.back().x;
        const double th = res.history.back().tau;
        if (std::abs(th) > 1e-12 * (1.0 + xh.lpNorm<Eigen::Infinity>()))
          po.x = xh / th;
        else
          po.x = xh;  // threshold recovered as ~0: leave the raw scale
      } else {
        po.diag.skipped = true;
        po.diag.message = res.message;
      }
    } catch (const Error& err) {
      po.diag.skipped = true;
      po.diag.message = err.what();
    }
    return po;
  };

  std::vector<PatchOut> results(patches.size());
  const int nj = std::max(1, jobs);
  if (nj == 1) {
    for (std::size_t k = 0; k < patches.size(); ++k)
      results[k] = solve_one(patches[k]);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= patches.size()) break;
        results[k] = solve_one(patches[k]);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < nj; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // deterministic sequential stitch on the padded canvas
  const int padded_size = l_z + p - 1;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(padded_size, padded_size);
  Eigen::MatrixXd count = Eigen::MatrixXd::Zero(padded_size, padded_size);

  RecoveredImage out;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& po = results[k];
    if (po.diag.skipped) ++out.failed_patches;
    for (int u = 0; u < e; ++u)
      for (int w = 0; w < e; ++w) {
        sum(po.diag.origin_row + u, po.diag.origin_col + w) +=
            po.x[static_cast<Eigen::Index>(u) * e + w];
        count(po.diag.origin_row + u, po.diag.origin_col + w) += 1.0;
      }
    out.diagnostics.push_back(po.diag);
  }

  Eigen::MatrixXd stitched =
      (count.array() > 0.0).select(sum.array() / count.array().max(1.0), 0.0);
  out.image = stitched.block(half, half, l_z, l_z);
  out.count = count.block(half, half, l_z, l_z);
  return out;
}

}  // namespace bsr
