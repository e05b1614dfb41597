#include "bsr/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bsr/errors.hpp"

namespace bsr::io {

namespace {

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) throw IoError("cannot open for writing: " + path);
  os.precision(17);
  return os;
}

std::ifstream open_in(const std::string& path, bool binary = false) {
  std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
  if (!is) throw IoError("cannot open for reading: " + path);
  return is;
}

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

void put_i32(std::ostream& os, std::int32_t v) {
  put_u64(os, static_cast<std::uint32_t>(v));  // widened; simple and uniform
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  if (!is) throw IoError("truncated measurement file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

std::int32_t get_i32(std::istream& is) {
  return static_cast<std::int32_t>(static_cast<std::uint32_t>(get_u64(is)));
}

}  // namespace

void write_spike_csv(const std::string& path, const SpikeTrain& st) {
  auto os = open_out(path);
  os << "row,col,amplitude\n";
  for (const auto& sp : st.spikes)
    os << sp.row << ',' << sp.col << ',' << sp.amplitude << '\n';
}

SpikeTrain read_spike_csv(const std::string& path, int rows, int cols) {
  auto is = open_in(path);
  SpikeTrain st;
  st.rows = rows;
  st.cols = cols;
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Spike sp;
    char comma;
    ls >> sp.row >> comma >> sp.col >> comma >> sp.amplitude;
    if (!ls) throw IoError("malformed spike row in " + path);
    st.spikes.push_back(sp);
  }
  return st;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  auto os = open_out(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << '\n';
  }
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  auto is = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("empty matrix file: " + path);
  Eigen::MatrixXd m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw IoError("ragged matrix file: " + path);
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v) {
  auto os = open_out(path);
  for (Eigen::Index i = 0; i < v.size(); ++i) os << v[i] << '\n';
}

Eigen::VectorXd read_vector_csv(const std::string& path) {
  Eigen::MatrixXd m = read_matrix_csv(path);
  if (m.cols() != 1) throw IoError("expected a single column: " + path);
  return m.col(0);
}

void write_pgm16(const std::string& path, const Eigen::MatrixXd& m) {
  auto os = open_out(path, true);
  const double lo = m.minCoeff(), hi = m.maxCoeff();
  const double span = hi > lo ? hi - lo : 1.0;
  os << "P5\n" << m.cols() << ' ' << m.rows() << "\n65535\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const auto v =
          static_cast<std::uint16_t>(65535.0 * (m(i, j) - lo) / span + 0.5);
      const unsigned char b[2] = {static_cast<unsigned char>(v >> 8),
                                  static_cast<unsigned char>(v & 0xff)};
      os.write(reinterpret_cast<const char*>(b), 2);
    }
}

namespace {
constexpr std::uint64_t kMagic = 0x31525342u;  // "BSR1"
}

void write_measurements(const std::string& bits_path,
                        const std::string& sidecar_path,
                        const std::vector<PatchMeasurements>& records) {
  auto os = open_out(bits_path, true);
  put_u64(os, kMagic);
  put_u64(os, records.size());
  for (const auto& r : records) {
    put_i32(os, r.origin_row);
    put_i32(os, r.origin_col);
    put_u64(os, r.meas.sensing_seed);
    put_i32(os, static_cast<std::int32_t>(r.meas.signs.size()));
    std::uint64_t flags = 0;
    if (r.degenerate) flags |= 1;
    if (r.tau_redrawn) flags |= 2;
    if (r.degenerate && r.uniform_sign > 0) flags |= 4;
    put_u64(os, flags);
    unsigned char byte = 0;
    int nbits = 0;
    for (Eigen::Index i = 0; i < r.meas.signs.size(); ++i) {
      byte = static_cast<unsigned char>(byte |
                                        ((r.meas.signs[i] > 0 ? 1 : 0) << nbits));
      if (++nbits == 8) {
        os.put(static_cast<char>(byte));
        byte = 0;
        nbits = 0;
      }
    }
    if (nbits > 0) os.put(static_cast<char>(byte));
  }

  nlohmann::json side;
  side["encoder_private"] = nlohmann::json::array();
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    nlohmann::json e;
    e["record"] = k;
    e["true_threshold"] = r.meas.true_threshold;
    if (r.meas.noise) {
      e["noise_sigma"] = r.meas.noise->sigma;
      e["noise_seed"] = r.meas.noise->seed;
      e["sign_flips"] = r.meas.sign_flips;
    }
    side["encoder_private"].push_back(e);
  }
  open_out(sidecar_path) << side.dump(2) << '\n';
}

std::vector<PatchMeasurements> read_measurements(const std::string& bits_path) {
  auto is = open_in(bits_path, true);
  if (get_u64(is) != kMagic) throw IoError("bad magic in " + bits_path);
  const std::uint64_t count = get_u64(is);
  std::vector<PatchMeasurements> out(count);
  for (auto& r : out) {
    r.origin_row = get_i32(is);
    r.origin_col = get_i32(is);
    r.meas.sensing_seed = get_u64(is);
    const std::int32_t m = get_i32(is);
    const std::uint64_t flags = get_u64(is);
    r.degenerate = flags & 1;
    r.tau_redrawn = flags & 2;
    if (r.degenerate) r.uniform_sign = (flags & 4) ? 1 : -1;
    r.meas.signs.resize(m);
    unsigned char byte = 0;
    int nbits = 8;
    for (std::int32_t i = 0; i < m; ++i) {
      if (nbits == 8) {
        int c = is.get();
        if (c < 0) throw IoError("truncated measurement file");
        byte = static_cast<unsigned char>(c);
        nbits = 0;
      }
      r.meas.signs[i] = (byte >> nbits) & 1 ? 1 : -1;
      ++nbits;
    }
  }
  return out;
}

void merge_sidecar(const std::string& sidecar_path,
                   std::vector<PatchMeasurements>& records) {
  nlohmann::json side;
  open_in(sidecar_path) >> side;
  for (const auto& e : side.at("encoder_private")) {
    const std::size_t k = e.at("record").get<std::size_t>();
    if (k >= records.size()) throw IoError("sidecar record out of range");
    records[k].meas.true_threshold = e.at("true_threshold").get<double>();
    if (e.contains("noise_sigma")) {
      GaussianNoise n;
      n.sigma = e["noise_sigma"].get<double>();
      n.seed = e["noise_seed"].get<std::uint64_t>();
      records[k].meas.noise = n;
      records[k].meas.sign_flips = e.value("sign_flips", 0);
    }
  }
}

}  // namespace bsr::io
