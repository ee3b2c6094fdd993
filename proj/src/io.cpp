#include "cca/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "cca/model.hpp"
#include "cca/version.hpp"

namespace cca::io {

using nlohmann::json;

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_digest(const std::filesystem::path& path) { return fnv1a64(read_text(path)); }

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
    auto out = path;
    out.replace_extension(".json");
    if (out == path) out += ".meta.json";
    return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw std::runtime_error("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_series(const std::filesystem::path& path, const DisorderSeries& series) {
    std::string body = "epsilon\n";
    body.reserve(series.values.size() * 24 + 8);
    for (double v : series.values) {
        body += format_double(v);
        body += '\n';
    }
    write_text(path, body);

    json meta = {
        {"schema_version", kSchemaVersion},
        {"software_version", kVersion},
        {"n", series.n_sites},
        {"alpha", series.alpha},
        {"seed", series.seed},
        {"wavelength_convention", kWavelengthConvention},
        {"normalization", "mean=0,population_variance=1"},
    };
    write_text(sidecar_path(path), meta.dump(2) + "\n");
}

std::string trajectory_metadata_json(const Trajectory& trajectory) {
    const auto& d = trajectory.config_digest;
    const auto& s = trajectory.settings;
    json meta = {
        {"schema_version", kSchemaVersion},
        {"software_version", kVersion},
        {"basis_ordering", kBasisOrdering},
        {"config",
         {{"n_cavities", d.n_cavities},
          {"coupling", d.coupling},
          {"atom_frequency", d.atom_frequency},
          {"disordered", d.disordered},
          {"alpha", d.alpha},
          {"seed", d.seed},
          {"wavelength_convention", kWavelengthConvention}}},
        {"propagator",
         {{"dt", s.dt}, {"taylor_order", s.taylor_order}, {"record_stride", s.record_stride}}},
        {"samples", trajectory.size()},
    };
    return meta.dump(2) + "\n";
}

void write_trajectory(const std::filesystem::path& path, const Trajectory& trajectory) {
    std::string body = "t,p_e,norm\n";
    body.reserve(trajectory.size() * 64);
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        body += format_double(trajectory.times[i]);
        body += ',';
        body += format_double(trajectory.p_e[i]);
        body += ',';
        body += format_double(trajectory.norm[i]);
        body += '\n';
    }
    write_text(path, body);
    write_text(sidecar_path(path), trajectory_metadata_json(trajectory));
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw std::runtime_error("missing CSV column: " + std::string(name));
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("empty CSV: " + path.string());
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) table.header.push_back(cell);
    }
    std::size_t line_no = 1;
    while (std::getline(f, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                         ": non-numeric cell '" + cell + "'");
            }
        }
        if (row.size() != table.header.size()) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": wrong number of columns");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Trajectory read_trajectory(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    const std::size_t t_col = table.column("t");
    const std::size_t p_col = table.column("p_e");
    std::size_t n_col = table.header.size();
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (table.header[i] == "norm") n_col = i;
    }
    Trajectory traj;
    for (const auto& row : table.rows) {
        traj.times.push_back(row[t_col]);
        traj.p_e.push_back(row[p_col]);
        traj.norm.push_back(n_col < row.size() ? row[n_col] : 1.0);
    }
    if (traj.size() >= 2) traj.settings.dt = traj.times[1] - traj.times[0];
    return traj;
}

} // namespace cca::io
