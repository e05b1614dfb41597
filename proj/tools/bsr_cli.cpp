// bsr: command-line harness around the recovery library.
//
// Verbs:
//   generate   signals + one-bit measurements to files
//   recover    measurement bitstream -> estimate CSV
//   evaluate   estimate + truth -> metrics
//   run        full preset/config pipeline with artifact bundle
//   report     one-bit vs full-precision bit budget

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bsr/acquisition.hpp"
#include "bsr/experiments.hpp"
#include "bsr/io.hpp"
#include "bsr/patch2d.hpp"
#include "bsr/signal_model.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string preset_name;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 0;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--preset", o.preset_name,
                  "built-in preset (fig1, table1-desk, fig2-oracle, fig3)");
  cmd->add_option("--seed", o.seed, "override the signal seed")
      ->each([&o](const std::string&) { o.seed_set = true; });
  cmd->add_option("--jobs", o.jobs, "worker threads for 2-D recovery");
  cmd->add_option("--out", o.out, "output directory");
}

bsr::ExperimentConfig resolve(const CommonOpts& o) {
  if (o.config_path.empty() && o.preset_name.empty())
    throw bsr::ConfigError("need --config or --preset");
  bsr::ExperimentConfig c = o.config_path.empty()
                                ? bsr::preset(o.preset_name)
                                : bsr::load_config(o.config_path);
  if (o.seed_set) c.signal_seed = o.seed;
  if (o.jobs > 0) c.jobs = o.jobs;
  if (!o.out.empty()) c.out_dir = o.out;
  return c;
}

bool is_two_d(const bsr::ExperimentConfig& c) {
  return c.kind == bsr::ExperimentKind::TwoD ||
         c.kind == bsr::ExperimentKind::OracleCompare;
}

std::pair<int, double> kernel_pair(const bsr::ExperimentConfig& c) {
  return c.kernel_sweep.empty() ? std::make_pair(c.p, c.sigma_h)
                                : c.kernel_sweep.front();
}

bsr::BlurKernel make_kernel(const bsr::ExperimentConfig& c) {
  if (is_two_d(c)) {
    auto [p, sigma] = kernel_pair(c);
    return bsr::make_gaussian_kernel(p, sigma);
  }
  if (c.kernel == "sinc") return bsr::make_sinc_kernel(c.l_h, c.cutoff);
  return bsr::make_gaussian_kernel_1d(c.l_h, c.sigma_h);
}

Eigen::Index measurement_count(const bsr::ExperimentConfig& c,
                               Eigen::Index l_z) {
  if (c.m_override > 0) return c.m_override;
  if (is_two_d(c)) return 2 * static_cast<Eigen::Index>(c.d) * c.d;
  return static_cast<Eigen::Index>(std::llround(c.m_multiplier * l_z));
}

int cmd_generate(const CommonOpts& o) {
  const bsr::ExperimentConfig c = resolve(o);
  const std::string dir = c.out_dir + "/" + c.name;
  std::filesystem::create_directories(dir);
  const bsr::BlurKernel kernel = make_kernel(c);

  if (is_two_d(c)) {
    const bsr::SpikeTrain truth = bsr::make_spike_train(
        c.l_x, c.l_x, c.s, c.signal_seed, c.amp_lo, c.amp_hi, c.min_separation);
    bsr::io::write_spike_csv(dir + "/truth_spikes.csv", truth);
    const auto patches = bsr::acquire_image(
        truth.dense_image(), kernel, c.d, measurement_count(c, c.l_x), c.tau,
        c.sensing_seed, c.shared_ensemble);
    bsr::io::write_measurements(dir + "/measurements.bsr",
                                dir + "/measurements.json", patches);
  } else {
    const bsr::SpikeTrain truth =
        bsr::make_spike_train(c.l_x, 1, c.s, c.signal_seed, c.amp_lo, c.amp_hi,
                              c.min_separation);
    bsr::io::write_spike_csv(dir + "/truth_spikes.csv", truth);
    const auto H = bsr::build_convolution_matrix(kernel, c.l_x);
    const Eigen::VectorXd z = bsr::apply_blur(truth, H);
    bsr::io::write_vector_csv(dir + "/blurred.csv", z);
    const auto A = bsr::make_sensing_ensemble(measurement_count(c, z.size()),
                                              z.size(), c.sensing_seed);
    const double tau =
        c.tau_policy == "median"
            ? bsr::choose_threshold(A.matrix * z, bsr::MedianPolicy{})
            : bsr::choose_threshold(A.matrix * z, bsr::FixedPolicy{c.tau});
    bsr::PatchMeasurements rec;
    rec.meas = bsr::encode(z, A, tau);
    bsr::io::write_measurements(dir + "/measurements.bsr",
                                dir + "/measurements.json", {rec});
  }
  std::cout << "wrote " << dir << "/{truth_spikes.csv,measurements.bsr}\n";
  return 0;
}

int cmd_recover(const CommonOpts& o, const std::string& bits_path) {
  const bsr::ExperimentConfig c = resolve(o);
  const std::string dir = c.out_dir + "/" + c.name;
  std::filesystem::create_directories(dir);
  auto patches = bsr::io::read_measurements(bits_path);
  const bsr::BlurKernel kernel = make_kernel(c);

  if (is_two_d(c)) {
    const bsr::RecoveredImage rimg = bsr::recover_image(
        patches, kernel, c.l_x, c.d, c.solver_config(), c.jobs);
    bsr::io::write_matrix_csv(dir + "/estimate.csv", rimg.image);
    bsr::io::write_pgm16(dir + "/estimate.pgm", rimg.image);
    std::cout << "recovered " << patches.size() << " patches ("
              << rimg.failed_patches << " failed) -> " << dir
              << "/estimate.csv\n";
  } else {
    if (patches.size() != 1)
      throw bsr::IoError("1-D recovery expects a single measurement record");
    const auto& rec = patches.front();
    const auto H = bsr::build_convolution_matrix(kernel, c.l_x);
    const auto A = bsr::make_sensing_ensemble(
        rec.meas.signs.size(), H.matrix.rows(), rec.meas.sensing_seed);
    const bsr::BsrResult res =
        bsr::bsr_recover(A.matrix * H.matrix, rec.meas.signs,
                         c.solver_config());
    if (res.status != bsr::BsrStatus::Converged)
      throw bsr::Error("recovery failed: " + res.message);
    bsr::io::write_vector_csv(dir + "/estimate.csv", res.x_hat);
    std::cout << "recovered -> " << dir << "/estimate.csv  (tau_hat = "
              << res.tau_hat << ")\n";
  }
  return 0;
}

int cmd_evaluate(const CommonOpts& o, const std::string& estimate_path,
                 const std::string& truth_path) {
  const bsr::ExperimentConfig c = resolve(o);
  const int rows = c.l_x, cols = is_two_d(c) ? c.l_x : 1;
  const bsr::SpikeTrain truth =
      bsr::io::read_spike_csv(truth_path, rows, cols);
  Eigen::VectorXd est;
  if (is_two_d(c)) {
    const Eigen::MatrixXd img = bsr::io::read_matrix_csv(estimate_path);
    est.resize(img.size());
    for (Eigen::Index i = 0; i < img.rows(); ++i)
      for (Eigen::Index j = 0; j < img.cols(); ++j)
        est[i * img.cols() + j] = img(i, j);
  } else {
    est = bsr::io::read_vector_csv(estimate_path);
  }
  const bsr::EvalReport r = bsr::evaluate(truth.dense_vector(), est, c.s);
  std::printf("tpr=%.6f snr1_db=%.6f re_db=%.6f recon_snr_db=%.6f s=%d\n",
              r.tpr, r.snr1_db, r.re_db, r.recon_snr_db, r.s_used);
  return 0;
}

int cmd_run(const CommonOpts& o) {
  const bsr::ExperimentConfig c = resolve(o);
  const bsr::RunSummary sum = bsr::run_experiment(c);
  for (std::size_t i = 0; i < sum.reports.size(); ++i) {
    const auto& r = sum.reports[i];
    std::printf("%-14s tpr=%.4f snr1_db=%8.3f re_db=%8.3f recon_snr_db=%8.3f\n",
                sum.row_labels[i].c_str(), r.tpr, r.snr1_db, r.re_db,
                r.recon_snr_db);
  }
  std::cout << sum.files.size() << " artifacts under " << c.out_dir << "/"
            << c.name << "\n";
  return 0;
}

int cmd_report(const CommonOpts& o) {
  const bsr::ExperimentConfig c = resolve(o);
  const auto [one_bit, full] = bsr::bit_budget_report(c);
  std::printf("one_bit_bits=%lld full_precision_bits=%lld\n",
              static_cast<long long>(one_bit), static_cast<long long>(full));
  return 0;
}

int cmd_dump_preset(const std::string& name, const std::string& path) {
  const nlohmann::json j = bsr::config_to_json(bsr::preset(name));
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream os(path);
    if (!os) throw bsr::IoError("cannot write " + path);
    os << j.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-bit blurred spike recovery harness"};
  app.require_subcommand(1);

  CommonOpts gen_o, rec_o, eval_o, run_o, rep_o;
  std::string bits_path, estimate_path, truth_path, preset_name, preset_out;

  auto* gen = app.add_subcommand("generate", "write signals and measurements");
  add_common(gen, gen_o);

  auto* rec = app.add_subcommand("recover", "recover from a bitstream");
  add_common(rec, rec_o);
  rec->add_option("measurements", bits_path, "measurement bitstream (.bsr)")
      ->required();

  auto* ev = app.add_subcommand("evaluate", "score an estimate against truth");
  add_common(ev, eval_o);
  ev->add_option("estimate", estimate_path, "estimate CSV")->required();
  ev->add_option("truth", truth_path, "truth spike CSV")->required();

  auto* run = app.add_subcommand("run", "full experiment pipeline");
  add_common(run, run_o);

  auto* rep = app.add_subcommand("report", "bit-budget report");
  add_common(rep, rep_o);

  auto* dump = app.add_subcommand("dump-preset", "print a preset as JSON");
  dump->add_option("name", preset_name, "preset name")->required();
  dump->add_option("--out-file", preset_out, "write to file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(gen_o);
    if (rec->parsed()) return cmd_recover(rec_o, bits_path);
    if (ev->parsed()) return cmd_evaluate(eval_o, estimate_path, truth_path);
    if (run->parsed()) return cmd_run(run_o);
    if (rep->parsed()) return cmd_report(rep_o);
    if (dump->parsed()) return cmd_dump_preset(preset_name, preset_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
