#include "bsr/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "bsr/acquisition.hpp"
#include "bsr/baselines.hpp"
#include "bsr/io.hpp"
#include "bsr/patch2d.hpp"
#include "bsr/rng.hpp"
#include "bsr/signal_model.hpp"

namespace bsr {

namespace {

const char* kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::OneD: return "OneD";
    case ExperimentKind::TwoD: return "TwoD";
    case ExperimentKind::NoiseSweep: return "NoiseSweep";
    case ExperimentKind::OracleCompare: return "OracleCompare";
  }
  return "?";
}

ExperimentKind kind_from_name(const std::string& s) {
  if (s == "OneD") return ExperimentKind::OneD;
  if (s == "TwoD") return ExperimentKind::TwoD;
  if (s == "NoiseSweep") return ExperimentKind::NoiseSweep;
  if (s == "OracleCompare") return ExperimentKind::OracleCompare;
  throw ConfigError("unknown experiment kind: " + s);
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  os.precision(17);
  return os;
}

}  // namespace

BsrConfig ExperimentConfig::solver_config() const {
  BsrConfig bc;
  bc.iterations = iterations;
  bc.epsilon_scale = epsilon_scale;
  if (mode == "noisy")
    bc.mode = BsrMode::Noisy;
  else if (mode == "noiseless")
    bc.mode = BsrMode::Noiseless;
  else
    throw ConfigError("mode must be noiseless or noisy: " + mode);
  bc.beta = beta;
  return bc;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["kind"] = kind_name(c.kind);
  j["name"] = c.name;
  j["signal"] = {{"l_x", c.l_x},
                 {"s", c.s},
                 {"amp_lo", c.amp_lo},
                 {"amp_hi", c.amp_hi},
                 {"min_separation", c.min_separation}};
  nlohmann::json sweep = nlohmann::json::array();
  for (const auto& [p, sg] : c.kernel_sweep) sweep.push_back({p, sg});
  j["kernel"] = {{"kind", c.kernel},   {"l_h", c.l_h},
                 {"cutoff", c.cutoff}, {"sigma_h", c.sigma_h},
                 {"p", c.p},           {"sweep", sweep}};
  j["acquisition"] = {{"m_multiplier", c.m_multiplier},
                      {"m_override", c.m_override},
                      {"tau_policy", c.tau_policy},
                      {"tau", c.tau},
                      {"input_snr_db", c.input_snr_db},
                      {"d", c.d},
                      {"shared_ensemble", c.shared_ensemble}};
  j["solver"] = {{"iterations", c.iterations},
                 {"epsilon_scale", c.epsilon_scale},
                 {"mode", c.mode},
                 {"beta", c.beta}};
  j["seeds"] = {{"signal", c.signal_seed},
                {"sensing", c.sensing_seed},
                {"noise", c.noise_seed}};
  j["jobs"] = c.jobs;
  j["out_dir"] = c.out_dir;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  try {
    ExperimentConfig c;
    c.kind = kind_from_name(j.at("kind").get<std::string>());
    c.name = j.value("name", "custom");
    const auto& sig = j.at("signal");
    c.l_x = sig.at("l_x").get<int>();
    c.s = sig.at("s").get<int>();
    c.amp_lo = sig.value("amp_lo", 0.0);
    c.amp_hi = sig.value("amp_hi", 5.0);
    c.min_separation = sig.value("min_separation", 1);
    const auto& ker = j.at("kernel");
    c.kernel = ker.at("kind").get<std::string>();
    c.l_h = ker.value("l_h", 101);
    c.cutoff = ker.value("cutoff", 0.05);
    c.sigma_h = ker.value("sigma_h", 2.0);
    c.p = ker.value("p", 5);
    for (const auto& pair : ker.value("sweep", nlohmann::json::array()))
      c.kernel_sweep.emplace_back(pair.at(0).get<int>(),
                                  pair.at(1).get<double>());
    const auto& acq = j.at("acquisition");
    c.m_multiplier = acq.value("m_multiplier", 1.5);
    c.m_override = acq.value("m_override", 0);
    c.tau_policy = acq.value("tau_policy", std::string("fixed"));
    c.tau = acq.value("tau", -0.1);
    c.input_snr_db = acq.value("input_snr_db", std::vector<double>{});
    c.d = acq.value("d", 16);
    c.shared_ensemble = acq.value("shared_ensemble", false);
    const auto& sol = j.at("solver");
    c.iterations = sol.at("iterations").get<int>();
    c.epsilon_scale = sol.value("epsilon_scale", 1e-3);
    c.mode = sol.value("mode", std::string("noiseless"));
    c.beta = sol.value("beta", 0.02);
    const auto& seeds = j.at("seeds");
    c.signal_seed = seeds.at("signal").get<std::uint64_t>();
    c.sensing_seed = seeds.at("sensing").get<std::uint64_t>();
    c.noise_seed = seeds.value("noise", std::uint64_t{0});
    c.jobs = j.value("jobs", 1);
    c.out_dir = j.value("out_dir", std::string("out"));
    validate(c);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
}

void validate(const ExperimentConfig& c) {
  if (c.l_x < 1) throw ConfigError("signal.l_x must be positive");
  if (c.s < 1) throw ConfigError("signal.s must be positive");
  if (c.iterations < 1) throw ConfigError("solver.iterations must be >= 1");
  if (c.mode != "noiseless" && c.mode != "noisy")
    throw ConfigError("solver.mode must be noiseless or noisy");
  if (c.mode == "noisy" && c.beta <= 0.0)
    throw ConfigError("solver.beta must be positive in noisy mode");
  if (c.tau_policy != "fixed" && c.tau_policy != "median")
    throw ConfigError("acquisition.tau_policy must be fixed or median");
  if (c.kernel != "sinc" && c.kernel != "gaussian1d" && c.kernel != "gaussian")
    throw ConfigError("kernel.kind must be sinc, gaussian1d, or gaussian");
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file: " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig c;
  c.name = name;
  if (name == "fig1") {
    c.kind = ExperimentKind::OneD;
    // l_x=200, s=6, sinc response, l_z=300, m=1.5 l_z=450, tau=-0.1, I=10.
    // Sources are kept half a main lobe apart and away from zero amplitude:
    // closer or weaker spikes are not resolvable from one-bit data.
    c.l_x = 200;
    c.s = 6;
    c.amp_lo = 1.0;
    c.min_separation = 10;
    c.kernel = "sinc";
    c.l_h = 101;
    c.cutoff = 0.2;
    c.m_multiplier = 1.5;
    c.tau = -0.1;
    c.iterations = 10;
  } else if (name == "table1-desk") {
    c.kind = ExperimentKind::TwoD;
    c.l_x = 64;
    c.s = 10;
    c.amp_lo = 1.0;
    c.min_separation = 6;
    c.kernel = "gaussian";
    c.kernel_sweep = {{5, 2.0}, {7, 3.0}, {9, 4.0}};
    c.d = 16;
    c.m_override = 512;  // 2 d^2
    c.tau = -2.0;  // comparable to the projection scale so tau is identifiable
    c.iterations = 5;
  } else if (name == "fig2-oracle") {
    c.kind = ExperimentKind::OracleCompare;
    c.l_x = 64;
    c.s = 10;
    c.amp_lo = 1.0;
    c.min_separation = 6;
    c.kernel = "gaussian";
    c.p = 5;
    c.sigma_h = 2.0;
    c.d = 16;
    c.m_override = 512;
    c.tau = -2.0;
    c.iterations = 5;
  } else if (name == "fig3") {
    c.kind = ExperimentKind::NoiseSweep;
    c.l_x = 200;
    // The slack relaxation with beta=0.02 only tolerates a small total
    // weighted-l1 mass: fewer, stronger, well-separated sources keep the
    // slack/l1 balance on the recovery side across the whole SNR sweep.
    c.s = 3;
    c.amp_lo = 3.0;
    c.min_separation = 10;
    c.kernel = "gaussian1d";
    c.l_h = 101;
    c.sigma_h = 1.5;
    c.m_multiplier = 2.0;  // m = 2 l_z = 600
    c.tau = -0.1;
    c.iterations = 8;
    c.mode = "noisy";
    c.beta = 0.02;
    c.epsilon_scale = 0.2;  // softer reweighting: slack makes IRl1 greedy
    c.input_snr_db = {30.0, 25.0, 20.0, 15.0, 10.0, 5.0};
  } else {
    throw ConfigError("unknown preset: " + name);
  }
  return c;
}

std::vector<std::string> preset_names() {
  return {"fig1", "table1-desk", "fig2-oracle", "fig3"};
}

std::uint64_t config_hash(const ExperimentConfig& c) {
  const std::string dump = config_to_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

BlurKernel kernel_1d(const ExperimentConfig& c) {
  if (c.kernel == "sinc") return make_sinc_kernel(c.l_h, c.cutoff);
  if (c.kernel == "gaussian1d") return make_gaussian_kernel_1d(c.l_h, c.sigma_h);
  throw ConfigError("1-D experiment needs a 1-D kernel, got: " + c.kernel);
}

double pick_tau(const ExperimentConfig& c, const Eigen::VectorXd& projections) {
  if (c.tau_policy == "median")
    return choose_threshold(projections, MedianPolicy{});
  return choose_threshold(projections, FixedPolicy{c.tau});
}

// Per-iteration recon SNR against the truth, each iterate normalized and
// scale-aligned the same way the final estimate is.
void write_iteration_csv(const std::string& path, const BsrResult& res,
                         const Eigen::VectorXd& truth, std::uint64_t seed,
                         std::uint64_t hash) {
  auto os = open_csv(path);
  os << "config_hash,seed,iteration,weighted_objective,surrogate,support_size,"
        "recon_snr_db\n";
  for (const auto& rec : res.history) {
    const double nrm = rec.x.norm();
    double snr = 0.0;
    if (nrm > 0)
      snr = recon_snr_db(truth, align_scale(truth, rec.x / nrm).first);
    os << hash << ',' << seed << ',' << rec.iteration << ','
       << rec.weighted_objective << ',' << rec.surrogate << ','
       << rec.support_size << ',' << snr << '\n';
  }
}

void write_metrics_csv(const std::string& path,
                       const std::vector<std::string>& labels,
                       const std::vector<EvalReport>& reports,
                       std::uint64_t seed, std::uint64_t hash) {
  auto os = open_csv(path);
  os << "config_hash,seed,label,tpr,snr1_db,snr1_inf,re_db,re_inf,"
        "recon_snr_db,recon_inf,s_used,scale_factor\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    auto flag = [](double v) { return std::abs(v) >= kDbInfinity ? 1 : 0; };
    os << hash << ',' << seed << ',' << labels[i] << ',' << r.tpr << ','
       << r.snr1_db << ',' << flag(r.snr1_db) << ',' << r.re_db << ','
       << flag(r.re_db) << ',' << r.recon_snr_db << ',' << flag(r.recon_snr_db)
       << ',' << r.s_used << ',' << r.scale_factor << '\n';
  }
}

void write_manifest(const std::string& path, const ExperimentConfig& c,
                    double wall_seconds) {
  nlohmann::json j;
  j["config"] = config_to_json(c);
  j["config_hash"] = config_hash(c);
  j["generator"] = "xoshiro256**";
  j["version"] = "1.0";
  j["wall_seconds"] = wall_seconds;
  std::ofstream os(path);
  if (!os) throw IoError("cannot write manifest: " + path);
  os << j.dump(2) << '\n';
}

// Hinton-diagram data: one row per nonzero estimate cell, box size
// proportional to |amplitude|.
void write_hinton_csv(const std::string& path, const Eigen::MatrixXd& img) {
  auto os = open_csv(path);
  os << "row,col,amplitude,box_size\n";
  const double peak = img.cwiseAbs().maxCoeff();
  if (peak == 0.0) return;
  for (Eigen::Index i = 0; i < img.rows(); ++i)
    for (Eigen::Index j = 0; j < img.cols(); ++j)
      if (img(i, j) != 0.0)
        os << i << ',' << j << ',' << img(i, j) << ','
           << std::abs(img(i, j)) / peak << '\n';
}

RunSummary run_one_d(const ExperimentConfig& c, const std::string& dir,
                     std::uint64_t hash) {
  RunSummary sum;
  const SpikeTrain truth = make_spike_train(c.l_x, 1, c.s, c.signal_seed,
                                            c.amp_lo, c.amp_hi,
                                            c.min_separation);
  const BlurKernel kernel = kernel_1d(c);
  const ConvolutionOperator H = build_convolution_matrix(kernel, c.l_x);
  const Eigen::VectorXd z = apply_blur(truth, H);
  const Eigen::Index l_z = z.size();
  const Eigen::Index m =
      c.m_override > 0
          ? c.m_override
          : static_cast<Eigen::Index>(std::llround(c.m_multiplier * l_z));
  if (m < 1) throw ConfigError("measurement count must be positive");

  const SensingEnsemble A = make_sensing_ensemble(m, l_z, c.sensing_seed);
  const double tau = pick_tau(c, A.matrix * z);
  PatchMeasurements rec;
  rec.meas = encode(z, A, tau);

  const Eigen::MatrixXd phi = A.matrix * H.matrix;
  BsrResult res = bsr_recover(phi, rec.meas.signs, c.solver_config());
  if (res.status != BsrStatus::Converged)
    throw Error("1-D recovery failed: " + res.message);

  const Eigen::VectorXd x_true = truth.dense_vector();
  EvalReport rep = evaluate(x_true, res.x_hat, c.s);
  sum.reports.push_back(rep);
  sum.row_labels.push_back(c.kernel);

  io::write_spike_csv(dir + "/truth_spikes.csv", truth);
  io::write_vector_csv(dir + "/blurred.csv", z);
  io::write_vector_csv(dir + "/estimate.csv", res.x_hat);
  io::write_measurements(dir + "/measurements.bsr", dir + "/measurements.json",
                         {rec});
  write_iteration_csv(dir + "/iterations.csv", res, x_true, c.signal_seed,
                      hash);
  write_metrics_csv(dir + "/metrics.csv", sum.row_labels, sum.reports,
                    c.signal_seed, hash);
  for (const char* f : {"truth_spikes.csv", "blurred.csv", "estimate.csv",
                        "measurements.bsr", "measurements.json",
                        "iterations.csv", "metrics.csv"})
    sum.files.push_back(dir + "/" + f);
  return sum;
}

RunSummary run_two_d(const ExperimentConfig& c, const std::string& dir,
                     std::uint64_t hash, bool with_oracle) {
  RunSummary sum;
  std::vector<std::pair<int, double>> sweep = c.kernel_sweep;
  if (sweep.empty()) sweep.emplace_back(c.p, c.sigma_h);

  const SpikeTrain truth = make_spike_train(c.l_x, c.l_x, c.s, c.signal_seed,
                                            c.amp_lo, c.amp_hi,
                                            c.min_separation);
  const Eigen::MatrixXd x_img = truth.dense_image();
  const Eigen::VectorXd x_vec = truth.dense_vector();
  io::write_spike_csv(dir + "/truth_spikes.csv", truth);
  sum.files.push_back(dir + "/truth_spikes.csv");

  const Eigen::Index m = c.m_override > 0 ? c.m_override
                                          : 2 * static_cast<Eigen::Index>(c.d) * c.d;

  for (const auto& [p, sigma] : sweep) {
    const std::string tag = "p" + std::to_string(p);
    const BlurKernel kernel = make_gaussian_kernel(p, sigma);
    auto patches = acquire_image(x_img, kernel, c.d, m, c.tau, c.sensing_seed,
                                 c.shared_ensemble);
    RecoveredImage rimg = recover_image(patches, kernel, c.l_x, c.d,
                                        c.solver_config(), c.jobs);

    Eigen::VectorXd est(static_cast<Eigen::Index>(c.l_x) * c.l_x);
    for (int i = 0; i < c.l_x; ++i)
      for (int j = 0; j < c.l_x; ++j)
        est[static_cast<Eigen::Index>(i) * c.l_x + j] = rimg.image(i, j);

    sum.reports.push_back(evaluate(x_vec, est, c.s));
    sum.row_labels.push_back("bsr_" + tag);

    io::write_measurements(dir + "/measurements_" + tag + ".bsr",
                           dir + "/measurements_" + tag + ".json", patches);
    io::write_matrix_csv(dir + "/estimate_" + tag + ".csv", rimg.image);
    io::write_pgm16(dir + "/estimate_" + tag + ".pgm", rimg.image);
    write_hinton_csv(dir + "/hinton_" + tag + ".csv", rimg.image);
    for (const std::string f :
         {"measurements_" + tag + ".bsr", "measurements_" + tag + ".json",
          "estimate_" + tag + ".csv", "estimate_" + tag + ".pgm",
          "hinton_" + tag + ".csv"})
      sum.files.push_back(dir + "/" + f);

    if (with_oracle) {
      // full-precision oracle per patch, stitched the same way
      const ConvolutionOperator op = build_patch_operator(kernel, c.d);
      const PatchGrid grid = make_patch_grid(c.l_x, c.d, p);
      const int e = grid.extended_size();
      const int half = (p - 1) / 2;
      Eigen::MatrixXd padded =
          Eigen::MatrixXd::Zero(c.l_x + p - 1, c.l_x + p - 1);
      padded.block(half, half, c.l_x, c.l_x) = x_img;
      Eigen::MatrixXd osum = Eigen::MatrixXd::Zero(c.l_x + p - 1, c.l_x + p - 1);
      Eigen::MatrixXd ocount = Eigen::MatrixXd::Zero(c.l_x + p - 1, c.l_x + p - 1);
      for (std::size_t k = 0; k < grid.origins.size(); ++k) {
        const auto& [oi, oj] = grid.origins[k];
        Eigen::VectorXd xp(static_cast<Eigen::Index>(e) * e);
        for (int u = 0; u < e; ++u)
          for (int w = 0; w < e; ++w)
            xp[static_cast<Eigen::Index>(u) * e + w] = padded(oi + u, oj + w);
        const SensingEnsemble ens = make_sensing_ensemble(
            m, static_cast<Eigen::Index>(c.d) * c.d,
            Rng::derive(c.sensing_seed, k).next_u64());
        const Eigen::MatrixXd phi = ens.matrix * op.matrix;
        Eigen::VectorXd xo;
        if (xp.isZero(0.0)) {
          xo = Eigen::VectorXd::Zero(xp.size());
        } else {
          xo = oracle_recover(phi, phi * xp);
        }
        for (int u = 0; u < e; ++u)
          for (int w = 0; w < e; ++w) {
            osum(oi + u, oj + w) += xo[static_cast<Eigen::Index>(u) * e + w];
            ocount(oi + u, oj + w) += 1.0;
          }
      }
      Eigen::MatrixXd oimg =
          (osum.array() / ocount.array().max(1.0)).matrix().block(
              half, half, c.l_x, c.l_x);
      Eigen::VectorXd oest(static_cast<Eigen::Index>(c.l_x) * c.l_x);
      for (int i = 0; i < c.l_x; ++i)
        for (int j = 0; j < c.l_x; ++j)
          oest[static_cast<Eigen::Index>(i) * c.l_x + j] = oimg(i, j);
      sum.reports.push_back(evaluate(x_vec, oest, c.s));
      sum.row_labels.push_back("oracle_" + tag);
      io::write_matrix_csv(dir + "/oracle_" + tag + ".csv", oimg);
      write_hinton_csv(dir + "/oracle_hinton_" + tag + ".csv", oimg);
      sum.files.push_back(dir + "/oracle_" + tag + ".csv");
      sum.files.push_back(dir + "/oracle_hinton_" + tag + ".csv");
    }
  }

  write_metrics_csv(dir + "/metrics.csv", sum.row_labels, sum.reports,
                    c.signal_seed, hash);
  sum.files.push_back(dir + "/metrics.csv");
  return sum;
}

RunSummary run_noise_sweep(const ExperimentConfig& c, const std::string& dir,
                           std::uint64_t hash) {
  RunSummary sum;
  const SpikeTrain truth = make_spike_train(c.l_x, 1, c.s, c.signal_seed,
                                            c.amp_lo, c.amp_hi,
                                            c.min_separation);
  const BlurKernel kernel = kernel_1d(c);
  const ConvolutionOperator H = build_convolution_matrix(kernel, c.l_x);
  const Eigen::VectorXd z = apply_blur(truth, H);
  const Eigen::Index l_z = z.size();
  const Eigen::Index m =
      c.m_override > 0
          ? c.m_override
          : static_cast<Eigen::Index>(std::llround(c.m_multiplier * l_z));
  const SensingEnsemble A = make_sensing_ensemble(m, l_z, c.sensing_seed);
  const Eigen::MatrixXd phi = A.matrix * H.matrix;
  const Eigen::VectorXd x_true = truth.dense_vector();

  const double tau = pick_tau(c, A.matrix * z);
  const Eigen::VectorXd margins =
      A.matrix * z - Eigen::VectorXd::Constant(m, tau);

  auto os = open_csv(dir + "/noise_sweep.csv");
  os << "config_hash,seed,input_snr_db,sigma_w,sign_flips,recon_snr_db,tpr\n";
  BsrConfig bc = c.solver_config();

  std::vector<double> points = c.input_snr_db;
  if (points.empty()) points = {30.0, 25.0, 20.0, 15.0, 10.0, 5.0};
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double target = points[k];
    GaussianNoise noise;
    noise.sigma = calibrate_sigma(target, margins);
    noise.seed = Rng::derive(c.noise_seed, k).next_u64();
    BinaryMeasurements meas = encode_noisy(z, A, tau, noise);
    BsrResult res = bsr_recover(phi, meas.signs, bc);
    EvalReport rep = evaluate(x_true, res.x_hat, c.s);
    sum.reports.push_back(rep);
    sum.row_labels.push_back("snr" + std::to_string(static_cast<int>(target)));
    os << hash << ',' << c.signal_seed << ',' << target << ',' << noise.sigma
       << ',' << meas.sign_flips << ',' << rep.recon_snr_db << ',' << rep.tpr
       << '\n';
  }
  sum.files.push_back(dir + "/noise_sweep.csv");
  return sum;
}

}  // namespace

RunSummary run_experiment(const ExperimentConfig& c) {
  validate(c);
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t hash = config_hash(c);
  const std::string dir = c.out_dir + "/" + c.name;
  std::filesystem::create_directories(dir);

  RunSummary sum;
  switch (c.kind) {
    case ExperimentKind::OneD:
      sum = run_one_d(c, dir, hash);
      break;
    case ExperimentKind::TwoD:
      sum = run_two_d(c, dir, hash, false);
      break;
    case ExperimentKind::OracleCompare:
      sum = run_two_d(c, dir, hash, true);
      break;
    case ExperimentKind::NoiseSweep:
      sum = run_noise_sweep(c, dir, hash);
      break;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_manifest(dir + "/manifest.json", c, wall);
  sum.files.push_back(dir + "/manifest.json");
  return sum;
}

std::pair<long long, long long> bit_budget_report(const ExperimentConfig& c) {
  validate(c);
  if (c.kind == ExperimentKind::TwoD || c.kind == ExperimentKind::OracleCompare) {
    const long long m =
        c.m_override > 0 ? c.m_override : 2LL * c.d * c.d;
    if (m < 1) throw ConfigError("measurement count must be positive");
    const PatchGrid grid = make_patch_grid(c.l_x, c.d, c.p);
    const long long one_bit =
        m * static_cast<long long>(grid.origins.size());
    const long long full = 16LL * c.l_x * c.l_x;
    return {one_bit, full};
  }
  const long long l_z = c.l_x + c.l_h - 1;
  const long long m = c.m_override > 0
                          ? c.m_override
                          : std::llround(c.m_multiplier * static_cast<double>(l_z));
  if (m < 1) throw ConfigError("measurement count must be positive");
  return {m, 16LL * l_z};
}

}  // namespace bsr
