// io.hpp: CSV/JSON persistence helpers shared by the CLI and the ensemble layer

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cca/disorder.hpp"
#include "cca/evolution.hpp"

namespace cca::io {

// Shortest round-trippable decimal form (%.17g), so CSVs are bit-stable.
std::string format_double(double x);

// 64-bit FNV-1a, hex encoded.
std::string fnv1a64(std::string_view bytes);
std::string file_digest(const std::filesystem::path& path);

// foo/bar.csv -> foo/bar.json
std::filesystem::path sidecar_path(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

// Header `epsilon`, then one value per line, plus a JSON sidecar with n, alpha, seed, L convention.
void write_series(const std::filesystem::path& path, const DisorderSeries& series);

// Header `t,p_e,norm`, plus a JSON sidecar with settings and provenance.
void write_trajectory(const std::filesystem::path& path, const Trajectory& trajectory);
std::string trajectory_metadata_json(const Trajectory& trajectory);

// Reads the CSV written by write_trajectory (norm column optional).
Trajectory read_trajectory(const std::filesystem::path& path);

// Minimal CSV table reader for numeric files with a single header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(std::string_view name) const;
};
CsvTable read_csv(const std::filesystem::path& path);

} // namespace cca::io
