#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bsr/bsr_solver.hpp"
#include "bsr/metrics.hpp"

namespace bsr {

enum class ExperimentKind { OneD, TwoD, NoiseSweep, OracleCompare };

// Everything a run needs, serializable to/from JSON bit-exactly.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::OneD;
  std::string name = "custom";

  // signal
  int l_x = 200;
  int s = 6;
  double amp_lo = 0.0, amp_hi = 5.0;
  int min_separation = 1;  // Chebyshev spacing between spike locations

  // kernel: "sinc" (1-D), "gaussian1d" (1-D), "gaussian" (2-D)
  std::string kernel = "sinc";
  int l_h = 101;
  double cutoff = 0.05;
  double sigma_h = 2.0;
  int p = 5;
  // TwoD sweep over (p, sigma_h) pairs; empty means use the single pair above
  std::vector<std::pair<int, double>> kernel_sweep;

  // acquisition
  double m_multiplier = 1.5;  // m = round(multiplier * l_z), 1-D
  int m_override = 0;         // used instead when > 0
  std::string tau_policy = "fixed";  // "fixed" | "median"
  double tau = -0.1;
  std::vector<double> input_snr_db;  // NoiseSweep points

  // 2-D
  int d = 16;
  bool shared_ensemble = false;

  // solver
  int iterations = 10;
  double epsilon_scale = 1e-3;
  std::string mode = "noiseless";  // "noiseless" | "noisy"
  double beta = 0.02;

  // seeds and execution
  std::uint64_t signal_seed = 1;
  std::uint64_t sensing_seed = 2;
  std::uint64_t noise_seed = 3;
  int jobs = 1;
  std::string out_dir = "out";

  BsrConfig solver_config() const;
};

// Throws ConfigError on out-of-range or inconsistent fields.
void validate(const ExperimentConfig& c);

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);

// Shipped presets: "fig1", "table1-desk", "fig2-oracle", "fig3".
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

// FNV-1a over the canonical JSON dump.
std::uint64_t config_hash(const ExperimentConfig& c);

struct RunSummary {
  std::vector<EvalReport> reports;      // one per kernel / sweep point
  std::vector<std::string> row_labels;  // matching labels
  std::vector<std::string> files;       // artifact paths written
};

// Executes the experiment and writes the artifact bundle (metrics CSV,
// signal dumps, measurement bitstreams, run manifest) under out_dir.
RunSummary run_experiment(const ExperimentConfig& config);

// (one-bit bits, full-precision bits): (m, 16 l_z) in 1-D, patch-summed in 2-D.
std::pair<long long, long long> bit_budget_report(const ExperimentConfig& c);

}  // namespace bsr
