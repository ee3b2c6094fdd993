// ensemble.hpp: disorder-realization ensembles, alpha sweeps and figure data
//
// Every realization is a pure function of (master_seed, alpha, index): the
// dynamics chain and the spectral chain draw from independently keyed
// streams. Results are folded in job order, so aggregates do not depend on
// the number of workers.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cca/evolution.hpp"
#include "cca/model.hpp"
#include "cca/nonmarkov.hpp"
#include "cca/spectral.hpp"

namespace cca {

struct SweepConfig {
    std::vector<double> alphas{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    std::size_t n_realizations = 100;
    std::uint64_t master_seed = 1;
    SystemConfig system{};
    PropagatorSettings propagator{};
    double t_max = 300.0;
    std::size_t spectral_n = 1001;
    std::size_t workers = 1;
    bool run_dynamics = true;
    bool run_spectral = true;

    void validate() const;
};

std::string to_json(const SweepConfig& config);
// Missing fields keep their defaults; unknown fields are rejected.
SweepConfig sweep_config_from_json(const std::string& text);

// Worker count, overridden by the CCA_WORKERS environment variable when set.
std::size_t effective_workers(std::size_t requested);

enum class StreamPurpose : std::uint64_t { dynamics = 1, spectral = 2, figure = 3 };

std::uint64_t realization_seed(std::uint64_t master_seed, double alpha, std::size_t index,
                               StreamPurpose purpose);

struct RealizationResult {
    double alpha = 0.0;
    std::size_t index = 0;
    std::uint64_t dynamics_seed = 0;
    std::uint64_t spectral_seed = 0;
    bool ok = true;
    std::string error;

    // Dynamics (empty when run_dynamics is false).
    std::vector<double> times;
    std::vector<double> p_e;
    double p_e_end = 0.0;
    double max_norm_deviation = 0.0;
    NonMarkovianityResult nonmarkov{};

    // Spectral chain.
    EffectiveParams effective{};
};

// Never throws for numerical failures: those are reported via ok/error.
RealizationResult run_realization(double alpha, std::size_t realization_index,
                                  const SweepConfig& config);

struct Statistic {
    double mean = 0.0;
    double std_error = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;
};

// Welford accumulator; folding order fixes the result bit for bit.
class RunningStatistic {
public:
    void add(double x);
    Statistic result() const;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double min_ = 0.0;
    double max_ = 0.0;
};

struct AlphaSummary {
    double alpha = 0.0;
    std::vector<double> times;
    std::vector<double> p_e_mean;
    std::vector<double> p_e_std_error;
    Statistic n{};
    Statistic n_simplified{};
    Statistic p_e_end{};
    Statistic r{};
    Statistic gamma{};
    Statistic xi{};
    std::size_t completed = 0;
    std::size_t failed = 0;
};

struct RealizationRecord {
    double alpha = 0.0;
    std::size_t index = 0;
    std::uint64_t dynamics_seed = 0;
    std::uint64_t spectral_seed = 0;
    bool ok = true;
    double n = 0.0;
    double n_v = 0.0;
    double n_tilde = 0.0;
    double n_v_extrema = 0.0;
    double p_e_end = 0.0;
    double max_norm_deviation = 0.0;
    double r = 0.0;
    double gamma = 0.0;
    double g_ell = 0.0;
    double xi = 0.0;
    std::size_t ell = 0;
    double omega_ell = 0.0;
};

struct SweepResult {
    SweepConfig config;
    std::vector<AlphaSummary> per_alpha;
    std::vector<RealizationRecord> records; // job order: alpha-major
    std::size_t failed = 0;
    bool complete = false;
};

struct SweepOptions {
    // When set, realizations.csv is appended as jobs are folded and
    // manifest.json / summary.csv / pe_curves.csv are written at the end.
    std::optional<std::filesystem::path> out_dir;
};

SweepResult run_sweep(const SweepConfig& config, const SweepOptions& options = {});

// Writes summary.csv, pe_curves.csv and manifest.json for a finished sweep.
void write_sweep_outputs(const SweepResult& result, const std::filesystem::path& out_dir);

enum class FigureName { fig2, fig3, fig4 };

struct FigureScale {
    std::string name;
    std::size_t n_cavities;
    std::size_t n_realizations;
    double t_max;
    std::size_t spectral_n;

    static FigureScale desk() { return {"desk", 1201, 100, 300.0, 1001}; }
    static FigureScale paper() { return {"paper", 6201, 1000, 600.0, 1001}; }
};

FigureName parse_figure_name(const std::string& name);
FigureScale parse_figure_scale(const std::string& name);
const char* to_string(FigureName name) noexcept;

struct FigureOptions {
    std::uint64_t master_seed = 1;
    std::size_t workers = 1;
    // Alpha grid used by fig2 and fig4.
    std::vector<double> fig2_alphas{0.0, 1.0, 2.0, 3.0};
    std::vector<double> fig4_alphas{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    double fig3_alpha = 3.0;
    double fig3_step = 0.1;        // omega_a spacing of the heat map
    std::size_t fig3_stride = 10;  // record every 10 steps (t spacing 1/J)
};

struct FigureOutput {
    std::vector<std::filesystem::path> files;
    std::optional<SweepResult> sweep;
};

// Runs the pipeline for one figure and writes CSVs plus manifest.json into out_dir.
FigureOutput reproduce_figure(FigureName name, const FigureScale& scale,
                              const std::filesystem::path& out_dir,
                              const FigureOptions& options = {});

// Homogeneous-chain Markovian reference exp(-g^2 t / J).
double markovian_reference(double t, double g, double hopping = 1.0);

} // namespace cca
