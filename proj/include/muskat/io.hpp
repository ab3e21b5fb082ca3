#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "muskat/grid.hpp"
#include "muskat/singular_ops.hpp"

namespace muskat::io {

// Raw grid function: little-endian [N: u64][L: f64][N x f64 values].
// Raw operator:      little-endian [N: u64][N: u64][N*N x f64, row-major].

inline constexpr std::size_t kRawHeaderBytes = 16;

std::vector<std::uint8_t> encode_raw(const GridFunction& u);
GridFunction decode_raw(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_operator_raw(const DiscreteOperator& op);

/// CSV with header "x,value" and one row per node, 17 significant digits.
void write_csv(std::ostream& os, const GridFunction& u);
/// Reads CSV written by write_csv; the grid is recovered from the nodes.
GridFunction read_csv(std::istream& is);

void save_raw(const std::filesystem::path& path, const GridFunction& u);
GridFunction load_raw(const std::filesystem::path& path);
void save_csv(const std::filesystem::path& path, const GridFunction& u);
GridFunction load_csv(const std::filesystem::path& path);
void save_operator_raw(const std::filesystem::path& path, const DiscreteOperator& op);

/// Loads by extension: ".csv" as CSV, anything else as raw float64.
GridFunction load_grid_function(const std::filesystem::path& path);

}  // namespace muskat::io
