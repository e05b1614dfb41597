#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cstdio>
#include <fstream>
#include <string>

#include "bsr/acquisition.hpp"
#include "bsr/errors.hpp"
#include "bsr/io.hpp"
#include "bsr/patch2d.hpp"
#include "bsr/signal_model.hpp"

using namespace bsr;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/bsr_io_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("spike CSV round-trips") {
  const SpikeTrain st = make_spike_train(32, 32, 4, 17, 1.0, 3.0, 4);
  TempFile f("spikes.csv");
  io::write_spike_csv(f.path, st);
  const SpikeTrain back = io::read_spike_csv(f.path, 32, 32);
  REQUIRE(back.spikes.size() == st.spikes.size());
  for (std::size_t i = 0; i < st.spikes.size(); ++i) {
    CHECK(back.spikes[i].row == st.spikes[i].row);
    CHECK(back.spikes[i].col == st.spikes[i].col);
    CHECK(back.spikes[i].amplitude == st.spikes[i].amplitude);
  }
}

TEST_CASE("matrix CSV round-trips at full precision") {
  Eigen::MatrixXd m(3, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = std::sqrt(2.0) * (i + 1) / (j + 1);
  TempFile f("matrix.csv");
  io::write_matrix_csv(f.path, m);
  const Eigen::MatrixXd back = io::read_matrix_csv(f.path);
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 4);
  CHECK((back - m).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("vector CSV round-trips") {
  Eigen::VectorXd v(5);
  v << 1.0, -2.5, 1e-17, 3.25e8, 0.1;
  TempFile f("vector.csv");
  io::write_vector_csv(f.path, v);
  const Eigen::VectorXd back = io::read_vector_csv(f.path);
  REQUIRE(back.size() == 5);
  CHECK((back - v).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("missing and malformed files throw IoError") {
  CHECK_THROWS_AS(io::read_matrix_csv("/tmp/bsr_io_test_does_not_exist.csv"),
                  IoError);
  TempFile f("ragged.csv");
  std::ofstream(f.path) << "1,2\n3\n";
  CHECK_THROWS_AS(io::read_matrix_csv(f.path), IoError);
}

TEST_CASE("measurement bitstreams round-trip without encoder secrets") {
  const SpikeTrain st = make_spike_train(16, 16, 2, 8, 2.0, 4.0, 5);
  const BlurKernel k = make_gaussian_kernel(3, 1.0);
  const auto patches = acquire_image(st.dense_image(), k, 8, 64, -1.5, 23);
  REQUIRE(!patches.empty());

  TempFile bits("meas.bsr");
  TempFile sidecar("meas.json");
  io::write_measurements(bits.path, sidecar.path, patches);

  auto back = io::read_measurements(bits.path);
  REQUIRE(back.size() == patches.size());
  for (std::size_t i = 0; i < patches.size(); ++i) {
    CHECK(back[i].origin_row == patches[i].origin_row);
    CHECK(back[i].origin_col == patches[i].origin_col);
    CHECK(back[i].degenerate == patches[i].degenerate);
    CHECK(back[i].meas.sensing_seed == patches[i].meas.sensing_seed);
    REQUIRE(back[i].meas.signs.size() == patches[i].meas.signs.size());
    if (patches[i].meas.signs.size() > 0)
      CHECK((back[i].meas.signs - patches[i].meas.signs).cwiseAbs().maxCoeff() ==
            0);
    // the decoder-visible file never carries the true threshold
    CHECK(back[i].meas.true_threshold == 0.0);
  }

  io::merge_sidecar(sidecar.path, back);
  for (std::size_t i = 0; i < patches.size(); ++i)
    CHECK(back[i].meas.true_threshold == patches[i].meas.true_threshold);
}

TEST_CASE("pgm16 output has a valid header") {
  Eigen::MatrixXd m(2, 3);
  m << 0.0, 0.5, 1.0, -1.0, 0.25, 2.0;
  TempFile f("img.pgm");
  io::write_pgm16(f.path, m);
  std::ifstream is(f.path, std::ios::binary);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  is >> magic >> w >> h >> maxval;
  CHECK(magic == "P5");
  CHECK(w == 3);
  CHECK(h == 2);
  CHECK(maxval == 65535);
}
