#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "bsr/errors.hpp"
#include "bsr/experiments.hpp"
#include "bsr/io.hpp"

using namespace bsr;
namespace fs = std::filesystem;

TEST_CASE("every shipped preset validates") {
  for (const std::string& name : preset_names()) {
    const ExperimentConfig c = preset(name);
    CHECK_NOTHROW(validate(c));
    CHECK(c.name == name);
  }
  CHECK_THROWS_AS(preset("not-a-preset"), ConfigError);
}

TEST_CASE("configs round-trip through JSON bit-exactly") {
  for (const std::string& name : preset_names()) {
    const ExperimentConfig a = preset(name);
    const ExperimentConfig b = config_from_json(config_to_json(a));
    CHECK(config_to_json(a) == config_to_json(b));
    CHECK(config_hash(a) == config_hash(b));
    CHECK(a.tau == b.tau);
    CHECK(a.epsilon_scale == b.epsilon_scale);
    CHECK(a.kernel_sweep == b.kernel_sweep);
    CHECK(a.input_snr_db == b.input_snr_db);
  }
}

TEST_CASE("config files load through the same path") {
  const ExperimentConfig a = preset("fig1");
  const std::string path = "/tmp/bsr_harness_cfg.json";
  std::ofstream(path) << config_to_json(a).dump(2);
  const ExperimentConfig b = load_config(path);
  CHECK(config_hash(a) == config_hash(b));
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config("/tmp/bsr_harness_missing.json"), ConfigError);
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(load_config(path), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("the hash separates distinct configurations") {
  ExperimentConfig a = preset("fig1");
  ExperimentConfig b = a;
  b.signal_seed += 1;
  CHECK(config_hash(a) != config_hash(b));
  ExperimentConfig c = a;
  c.tau = -0.2;
  CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("invalid configurations are rejected") {
  ExperimentConfig c = preset("fig1");
  SUBCASE("bad iterations") {
    c.iterations = 0;
    CHECK_THROWS_AS(validate(c), ConfigError);
  }
  SUBCASE("bad mode") {
    c.mode = "fuzzy";
    CHECK_THROWS_AS(validate(c), ConfigError);
  }
  SUBCASE("bad kernel") {
    c.kernel = "boxcar";
    CHECK_THROWS_AS(validate(c), ConfigError);
  }
  SUBCASE("bad beta") {
    c.mode = "noisy";
    c.beta = 0.0;
    CHECK_THROWS_AS(validate(c), ConfigError);
  }
}

TEST_CASE("bit budget: one-bit versus full-precision baseline") {
  const auto [one_bit, full] = bit_budget_report(preset("fig1"));
  CHECK(one_bit == 450);
  CHECK(full == 16LL * 300);
}

TEST_CASE("a small 1-D run writes its artifact bundle deterministically") {
  ExperimentConfig c = preset("fig1");
  c.l_x = 60;
  c.l_h = 21;
  c.s = 2;
  c.iterations = 3;
  c.min_separation = 8;

  c.out_dir = "/tmp/bsr_harness_run";
  fs::remove_all(c.out_dir);
  const RunSummary a = run_experiment(c);
  REQUIRE(a.reports.size() == 1);
  CHECK(a.reports[0].tpr == 1.0);
  for (const std::string& f : a.files) CHECK(fs::exists(f));
  CHECK(fs::exists(c.out_dir + "/fig1/manifest.json"));

  auto slurp = [](const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(is)), {});
  };
  std::vector<std::string> first;
  for (const std::string& f : a.files) first.push_back(slurp(f));

  // byte-identical artifacts when the same config runs again (the manifest
  // records wall time and is exempt)
  const RunSummary b = run_experiment(c);
  REQUIRE(b.files.size() == a.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) {
    if (a.files[i].ends_with("manifest.json")) continue;
    CHECK(slurp(b.files[i]) == first[i]);
  }
  fs::remove_all(c.out_dir);
}
