#include "muskat/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>

namespace muskat::io {

namespace {

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::span<const std::uint8_t> bytes, std::size_t pos) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(bytes[pos + static_cast<std::size_t>(b)]) << (8 * b);
  return v;
}

double get_f64(std::span<const std::uint8_t> bytes, std::size_t pos) {
  return std::bit_cast<double>(get_u64(bytes, pos));
}

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<std::uint8_t> encode_raw(const GridFunction& u) {
  std::vector<std::uint8_t> out;
  out.reserve(kRawHeaderBytes + 8 * u.size());
  put_u64(out, u.size());
  put_f64(out, u.grid().half_width());
  for (double v : u.values()) put_f64(out, v);
  return out;
}

GridFunction decode_raw(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kRawHeaderBytes) throw std::runtime_error("raw grid function: truncated header");
  const std::uint64_t n = get_u64(bytes, 0);
  const double L = get_f64(bytes, 8);
  if (bytes.size() != kRawHeaderBytes + 8 * n) {
    throw std::runtime_error("raw grid function: payload size does not match N = " + std::to_string(n));
  }
  Grid grid(L, static_cast<std::size_t>(n));
  std::vector<double> values(n);
  for (std::size_t j = 0; j < n; ++j) values[j] = get_f64(bytes, kRawHeaderBytes + 8 * j);
  return GridFunction(grid, std::move(values));
}

std::vector<std::uint8_t> encode_operator_raw(const DiscreteOperator& op) {
  const auto n = static_cast<std::uint64_t>(op.matrix.rows());
  std::vector<std::uint8_t> out;
  out.reserve(16 + 8 * n * n);
  put_u64(out, n);
  put_u64(out, static_cast<std::uint64_t>(op.matrix.cols()));
  for (Eigen::Index i = 0; i < op.matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < op.matrix.cols(); ++j) put_f64(out, op.matrix(i, j));
  }
  return out;
}

void write_csv(std::ostream& os, const GridFunction& u) {
  os << "x,value\n";
  for (std::size_t j = 0; j < u.size(); ++j) {
    os << format_double(u.grid().node(j)) << ',' << format_double(u[j]) << '\n';
  }
}

GridFunction read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "x,value") throw std::runtime_error("csv: expected header 'x,value'");
  std::vector<double> xs;
  std::vector<double> vs;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("csv: missing comma on line " + std::to_string(lineno));
    try {
      xs.push_back(std::stod(line.substr(0, comma)));
      vs.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw std::runtime_error("csv: bad number on line " + std::to_string(lineno));
    }
  }
  if (xs.empty()) throw std::runtime_error("csv: no data rows");
  Grid grid(-xs.front(), xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (std::abs(xs[j] - grid.node(j)) > 1e-9 * grid.half_width()) {
      throw std::runtime_error("csv: nodes are not a uniform grid on [-L, L)");
    }
  }
  return GridFunction(grid, std::move(vs));
}

void save_raw(const std::filesystem::path& path, const GridFunction& u) { write_bytes(path, encode_raw(u)); }

GridFunction load_raw(const std::filesystem::path& path) { return decode_raw(read_bytes(path)); }

void save_csv(const std::filesystem::path& path, const GridFunction& u) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(os, u);
}

GridFunction load_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return read_csv(is);
}

void save_operator_raw(const std::filesystem::path& path, const DiscreteOperator& op) {
  write_bytes(path, encode_operator_raw(op));
}

GridFunction load_grid_function(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? load_csv(path) : load_raw(path);
}

}  // namespace muskat::io
