#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <limits>
#include <string>

#include "json.hpp"

#include "cca/disorder.hpp"
#include "cca/evolution.hpp"
#include "cca/io.hpp"
#include "cca/model.hpp"
#include "cca/rng.hpp"
#include "cca/version.hpp"

using namespace cca;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "cca_io_tests";
    fs::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("format_double round-trips") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
        CHECK(std::stod(io::format_double(x)) == x);
    }
}

TEST_CASE("FNV-1a reference vectors") {
    CHECK(io::fnv1a64("") == "cbf29ce484222325");
    CHECK(io::fnv1a64("a") == "af63dc4c8601ec8c");
    CHECK(io::fnv1a64("foobar") == "85944171f73967e8");
}

TEST_CASE("sidecar naming") {
    CHECK(io::sidecar_path("out/traj.csv") == fs::path("out/traj.json"));
    CHECK(io::sidecar_path("meta.json") == fs::path("meta.json.meta.json"));
}

TEST_CASE("series file and metadata") {
    RngStream s(42);
    const auto series = sample_series(101, 2.0, s);
    const auto path = scratch("series.csv");
    io::write_series(path, series);
    const auto table = io::read_csv(path);
    REQUIRE(table.header == std::vector<std::string>{"epsilon"});
    REQUIRE(table.rows.size() == 101);
    for (std::size_t i = 0; i < 101; ++i) CHECK(table.rows[i][0] == series.values[i]);
    const auto meta = nlohmann::json::parse(io::read_text(io::sidecar_path(path)));
    CHECK(meta["n"] == 101);
    CHECK(meta["alpha"] == 2.0);
    CHECK(meta["seed"] == 42);
    CHECK(meta["wavelength_convention"] == "L=N");
    CHECK(meta["schema_version"] == kSchemaVersion);
}

TEST_CASE("trajectory round trip is bit exact") {
    SystemConfig cfg;
    cfg.n_cavities = 51;
    RngStream s(3);
    const auto series = sample_series(51, 1.0, s);
    const auto traj = evolve(build_full_hamiltonian(cfg, series), PropagatorSettings{}, 20.0,
                             ConfigDigest{51, 0.1, 0.0, 1.0, 3, true});
    const auto path = scratch("traj.csv");
    io::write_trajectory(path, traj);
    const auto back = io::read_trajectory(path);
    CHECK(back.times == traj.times);
    CHECK(back.p_e == traj.p_e);
    CHECK(back.norm == traj.norm);
    const auto meta = nlohmann::json::parse(io::read_text(io::sidecar_path(path)));
    CHECK(meta["config"]["seed"] == 3);
    CHECK(meta["propagator"]["taylor_order"] == 12);
    CHECK(meta["basis_ordering"] == std::string(kBasisOrdering));
    // Same input, same bytes.
    const auto first = io::file_digest(path);
    io::write_trajectory(path, traj);
    CHECK(io::file_digest(path) == first);
}

TEST_CASE("trajectory reader accepts files without a norm column") {
    const auto path = scratch("bare.csv");
    io::write_text(path, "t,p_e\n0,1\n0.5,0.8\n1,0.9\n");
    const auto traj = io::read_trajectory(path);
    CHECK(traj.size() == 3);
    CHECK(traj.norm == std::vector<double>{1.0, 1.0, 1.0});
    CHECK(traj.settings.dt == 0.5);
}

TEST_CASE("CSV reader errors") {
    const auto path = scratch("bad.csv");
    io::write_text(path, "t,p_e\n0,1\n1\n");
    CHECK_THROWS_AS(io::read_csv(path), std::runtime_error);
    io::write_text(path, "t,p_e\n0,abc\n");
    CHECK_THROWS_AS(io::read_csv(path), std::runtime_error);
    io::write_text(path, "x,y\n0,1\n");
    CHECK_THROWS_AS(io::read_trajectory(path), std::runtime_error);
    CHECK_THROWS_AS(io::read_csv(scratch("missing.csv")), std::runtime_error);
}
