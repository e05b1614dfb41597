#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "bsr/patch2d.hpp"
#include "bsr/signal_model.hpp"

namespace bsr::io {

// Spike lists as CSV rows (row, col, amplitude).
void write_spike_csv(const std::string& path, const SpikeTrain& st);
SpikeTrain read_spike_csv(const std::string& path, int rows, int cols);

// Dense signals/images as CSV (one row per line, full precision).
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(const std::string& path);
void write_vector_csv(const std::string& path, const Eigen::VectorXd& v);
Eigen::VectorXd read_vector_csv(const std::string& path);

// 16-bit PGM, linearly scaled to [0, 65535] for viewing.
void write_pgm16(const std::string& path, const Eigen::MatrixXd& m);

// Compact measurement bitstream: per record a small header (origins, sensing
// seed, m, flags) followed by one bit per sign. Encoder-private fields (the
// true threshold and the noise spec) go to a separate JSON sidecar so the
// decoder-side file never contains them.
void write_measurements(const std::string& bits_path,
                        const std::string& sidecar_path,
                        const std::vector<PatchMeasurements>& records);

// Reads the decoder-visible part only; true_threshold comes back as 0 and
// noise as absent unless merge_sidecar is called on the result.
std::vector<PatchMeasurements> read_measurements(const std::string& bits_path);
void merge_sidecar(const std::string& sidecar_path,
                   std::vector<PatchMeasurements>& records);

}  // namespace bsr::io
