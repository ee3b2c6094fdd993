#include "cca/ensemble.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "cca/disorder.hpp"
#include "cca/effective.hpp"
#include "cca/eigensolver.hpp"
#include "cca/errors.hpp"
#include "cca/io.hpp"
#include "cca/rng.hpp"
#include "cca/version.hpp"

namespace cca {

using nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Configuration

void SweepConfig::validate() const {
    if (alphas.empty()) throw std::invalid_argument("alphas must be nonempty");
    for (double a : alphas) {
        if (!(a >= 0.0) || !std::isfinite(a)) throw std::invalid_argument("alphas must be >= 0");
    }
    if (n_realizations < 1) throw std::invalid_argument("n_realizations must be >= 1");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (!run_dynamics && !run_spectral) throw std::invalid_argument("nothing to run");
    system.validate();
    if (system.n_cavities < 3) throw std::invalid_argument("n_cavities must be >= 3");
    propagator.validate();
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    if (spectral_n < 3 || spectral_n % 2 == 0) {
        throw std::invalid_argument("spectral_n must be odd and >= 3");
    }
}

namespace {

json config_json(const SweepConfig& c) {
    return {
        {"schema_version", kSchemaVersion},
        {"alphas", c.alphas},
        {"n_realizations", c.n_realizations},
        {"master_seed", c.master_seed},
        {"system",
         {{"n_cavities", c.system.n_cavities},
          {"hopping", c.system.hopping},
          {"coupling", c.system.coupling},
          {"atom_frequency", c.system.atom_frequency}}},
        {"propagator",
         {{"dt", c.propagator.dt},
          {"taylor_order", c.propagator.taylor_order},
          {"record_stride", c.propagator.record_stride}}},
        {"t_max", c.t_max},
        {"spectral_n", c.spectral_n},
        {"workers", c.workers},
        {"run_dynamics", c.run_dynamics},
        {"run_spectral", c.run_spectral},
    };
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const char* where) {
    std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) {
            throw std::invalid_argument(std::string("unknown field '") + key + "' in " + where);
        }
    }
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

} // namespace

std::string to_json(const SweepConfig& config) { return config_json(config).dump(2); }

SweepConfig sweep_config_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("sweep config must be a JSON object");
    reject_unknown(j,
                   {"schema_version", "alphas", "n_realizations", "master_seed", "system",
                    "propagator", "t_max", "spectral_n", "workers", "run_dynamics",
                    "run_spectral"},
                   "sweep config");
    if (j.contains("schema_version") && j.at("schema_version").get<int>() != kSchemaVersion) {
        throw std::invalid_argument("unsupported schema_version");
    }
    SweepConfig c;
    read_field(j, "alphas", c.alphas);
    read_field(j, "n_realizations", c.n_realizations);
    read_field(j, "master_seed", c.master_seed);
    read_field(j, "t_max", c.t_max);
    read_field(j, "spectral_n", c.spectral_n);
    read_field(j, "workers", c.workers);
    read_field(j, "run_dynamics", c.run_dynamics);
    read_field(j, "run_spectral", c.run_spectral);
    if (j.contains("system")) {
        const json& s = j.at("system");
        reject_unknown(s, {"n_cavities", "hopping", "coupling", "atom_frequency"}, "system");
        read_field(s, "n_cavities", c.system.n_cavities);
        read_field(s, "hopping", c.system.hopping);
        read_field(s, "coupling", c.system.coupling);
        read_field(s, "atom_frequency", c.system.atom_frequency);
    }
    if (j.contains("propagator")) {
        const json& p = j.at("propagator");
        reject_unknown(p, {"dt", "taylor_order", "record_stride"}, "propagator");
        read_field(p, "dt", c.propagator.dt);
        read_field(p, "taylor_order", c.propagator.taylor_order);
        read_field(p, "record_stride", c.propagator.record_stride);
    }
    c.validate();
    return c;
}

std::size_t effective_workers(std::size_t requested) {
    if (const char* env = std::getenv("CCA_WORKERS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
        std::cerr << "[cca] ignoring invalid CCA_WORKERS='" << env << "'\n";
    }
    return std::max<std::size_t>(requested, 1);
}

std::uint64_t realization_seed(std::uint64_t master_seed, double alpha, std::size_t index,
                               StreamPurpose purpose) {
    const double canonical = alpha == 0.0 ? 0.0 : alpha; // fold -0.0 into 0.0
    return derive_seed(master_seed, {std::bit_cast<std::uint64_t>(canonical),
                                     static_cast<std::uint64_t>(index),
                                     static_cast<std::uint64_t>(purpose)});
}

// ---------------------------------------------------------------------------
// One realization

RealizationResult run_realization(double alpha, std::size_t realization_index,
                                  const SweepConfig& config) {
    RealizationResult out;
    out.alpha = alpha;
    out.index = realization_index;
    out.dynamics_seed =
        realization_seed(config.master_seed, alpha, realization_index, StreamPurpose::dynamics);
    out.spectral_seed =
        realization_seed(config.master_seed, alpha, realization_index, StreamPurpose::spectral);

    try {
        if (config.run_dynamics) {
            RngStream stream(out.dynamics_seed);
            const auto series = sample_series(config.system.n_cavities, alpha, stream);
            const auto hamiltonian = build_full_hamiltonian(config.system, series);
            ConfigDigest digest{config.system.n_cavities, config.system.coupling,
                                config.system.atom_frequency, alpha, out.dynamics_seed, true};
            auto traj = evolve(hamiltonian, config.propagator, config.t_max, digest);
            for (double nrm : traj.norm) {
                out.max_norm_deviation = std::max(out.max_norm_deviation, std::abs(nrm - 1.0));
            }
            out.nonmarkov = non_markovianity(traj);
            out.p_e_end = traj.p_e.back();
            out.times = std::move(traj.times);
            out.p_e = std::move(traj.p_e);
        }
        if (config.run_spectral) {
            RngStream stream(out.spectral_seed);
            const auto series = sample_series(config.spectral_n, alpha, stream);
            SystemConfig chain = config.system;
            chain.n_cavities = config.spectral_n;
            const auto field = build_free_field(chain, series);
            const auto spectrum = TridiagonalSpectrum::compute(field.diag, field.off);
            out.effective = effective_params(spectrum, chain.coupling, chain.atom_site(),
                                             chain.atom_frequency);
        }
    } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Aggregation

void RunningStatistic::add(double x) {
    ++n_;
    if (n_ == 1) {
        min_ = max_ = x;
    } else {
        min_ = std::min(min_, x);
        max_ = std::max(max_, x);
    }
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

Statistic RunningStatistic::result() const {
    Statistic s;
    s.count = n_;
    if (n_ == 0) return s;
    s.mean = std::min(std::max(mean_, min_), max_);
    s.min = min_;
    s.max = max_;
    if (n_ > 1) {
        const double var = m2_ / static_cast<double>(n_ - 1);
        s.std_error = std::sqrt(var / static_cast<double>(n_));
    }
    return s;
}

namespace {

struct AlphaAccumulator {
    double alpha = 0.0;
    std::vector<double> times;
    std::vector<double> curve_mean;
    std::vector<double> curve_m2;
    std::size_t curve_n = 0;
    RunningStatistic n, n_simplified, p_e_end, r, gamma, xi;
    std::size_t completed = 0;
    std::size_t failed = 0;

    void add(const RealizationResult& res, const SweepConfig& config) {
        if (!res.ok) {
            ++failed;
            return;
        }
        ++completed;
        if (config.run_dynamics) {
            if (curve_n == 0) {
                times = res.times;
                curve_mean.assign(res.p_e.size(), 0.0);
                curve_m2.assign(res.p_e.size(), 0.0);
            }
            ++curve_n;
            const double inv = 1.0 / static_cast<double>(curve_n);
            for (std::size_t i = 0; i < res.p_e.size(); ++i) {
                const double delta = res.p_e[i] - curve_mean[i];
                curve_mean[i] += delta * inv;
                curve_m2[i] += delta * (res.p_e[i] - curve_mean[i]);
            }
            n.add(res.nonmarkov.n);
            n_simplified.add(res.nonmarkov.n_simplified);
            p_e_end.add(res.p_e_end);
        }
        if (config.run_spectral) {
            r.add(res.effective.r);
            gamma.add(res.effective.gamma);
            xi.add(res.effective.xi);
        }
    }

    AlphaSummary summary() const {
        AlphaSummary s;
        s.alpha = alpha;
        s.times = times;
        s.p_e_mean = curve_mean;
        s.p_e_std_error.assign(curve_mean.size(), 0.0);
        if (curve_n > 1) {
            const double denom = static_cast<double>(curve_n - 1) * static_cast<double>(curve_n);
            for (std::size_t i = 0; i < curve_m2.size(); ++i) {
                s.p_e_std_error[i] = std::sqrt(curve_m2[i] / denom);
            }
        }
        s.n = n.result();
        s.n_simplified = n_simplified.result();
        s.p_e_end = p_e_end.result();
        s.r = r.result();
        s.gamma = gamma.result();
        s.xi = xi.result();
        s.completed = completed;
        s.failed = failed;
        return s;
    }
};

RealizationRecord make_record(const RealizationResult& res) {
    RealizationRecord rec;
    rec.alpha = res.alpha;
    rec.index = res.index;
    rec.dynamics_seed = res.dynamics_seed;
    rec.spectral_seed = res.spectral_seed;
    rec.ok = res.ok;
    rec.n = res.nonmarkov.n;
    rec.n_v = res.nonmarkov.n_v;
    rec.n_tilde = res.nonmarkov.n_tilde;
    rec.n_v_extrema = res.nonmarkov.n_v_extrema;
    rec.p_e_end = res.p_e_end;
    rec.max_norm_deviation = res.max_norm_deviation;
    rec.r = res.effective.r;
    rec.gamma = res.effective.gamma;
    rec.g_ell = res.effective.g_ell;
    rec.xi = res.effective.xi;
    rec.ell = res.effective.ell;
    rec.omega_ell = res.effective.omega_ell;
    return rec;
}

constexpr const char* kRecordHeader =
    "alpha,index,dynamics_seed,spectral_seed,ok,N,n_v,n_tilde,n_v_extrema,p_e_end,"
    "max_norm_deviation,r,gamma,g_ell,xi,ell,omega_ell\n";

std::string record_line(const RealizationRecord& r) {
    using io::format_double;
    std::string s;
    s += format_double(r.alpha) + ',' + std::to_string(r.index) + ',' +
         std::to_string(r.dynamics_seed) + ',' + std::to_string(r.spectral_seed) + ',' +
         (r.ok ? "1" : "0") + ',' + format_double(r.n) + ',' + format_double(r.n_v) + ',' +
         format_double(r.n_tilde) + ',' + format_double(r.n_v_extrema) + ',' +
         format_double(r.p_e_end) + ',' + format_double(r.max_norm_deviation) + ',' +
         format_double(r.r) + ',' + format_double(r.gamma) + ',' + format_double(r.g_ell) + ',' +
         format_double(r.xi) + ',' + std::to_string(r.ell) + ',' + format_double(r.omega_ell) +
         '\n';
    return s;
}

std::string alpha_label(double alpha) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", alpha);
    return buf;
}

json manifest_base(const char* kind) {
    return {{"schema_version", kSchemaVersion},
            {"software_version", kVersion},
            {"kind", kind},
            {"basis_ordering", kBasisOrdering},
            {"wavelength_convention", kWavelengthConvention}};
}

json file_entries(const fs::path& dir, const std::vector<std::string>& names) {
    json files = json::array();
    for (const auto& name : names) {
        files.push_back({{"name", name}, {"fnv1a64", io::file_digest(dir / name)}});
    }
    return files;
}

} // namespace

// ---------------------------------------------------------------------------
// Sweep

SweepResult run_sweep(const SweepConfig& config, const SweepOptions& options) {
    config.validate();
    const std::size_t workers = effective_workers(config.workers);
    const std::size_t per_alpha = config.n_realizations;
    const std::size_t n_jobs = config.alphas.size() * per_alpha;

    std::vector<AlphaAccumulator> acc(config.alphas.size());
    for (std::size_t a = 0; a < acc.size(); ++a) acc[a].alpha = config.alphas[a];

    SweepResult result;
    result.config = config;
    result.records.reserve(n_jobs);

    std::ofstream record_file;
    if (options.out_dir) {
        fs::create_directories(*options.out_dir);
        json manifest = manifest_base("sweep");
        manifest["config"] = config_json(config);
        manifest["complete"] = false;
        manifest["expected_records"] = n_jobs;
        io::write_text(*options.out_dir / "manifest.json", manifest.dump(2) + "\n");
        record_file.open(*options.out_dir / "realizations.csv", std::ios::trunc);
        if (!record_file) throw std::runtime_error("cannot open realizations.csv");
        record_file << kRecordHeader << std::flush;
    }

    auto fold = [&](std::size_t job, RealizationResult&& res) {
        const std::size_t a = job / per_alpha;
        if (!res.ok) {
            std::cerr << "[cca] realization alpha=" << res.alpha << " index=" << res.index
                      << " failed: " << res.error << "\n";
            ++result.failed;
        }
        acc[a].add(res, config);
        result.records.push_back(make_record(res));
        if (record_file.is_open()) record_file << record_line(result.records.back()) << std::flush;
    };

    auto job_alpha = [&](std::size_t job) { return config.alphas[job / per_alpha]; };

    if (workers == 1) {
        for (std::size_t j = 0; j < n_jobs; ++j) {
            fold(j, run_realization(job_alpha(j), j % per_alpha, config));
        }
    } else {
        std::mutex mu;
        std::condition_variable cv;
        std::map<std::size_t, RealizationResult> pending;
        std::atomic<std::size_t> next{0};

        auto worker = [&] {
            for (;;) {
                const std::size_t j = next.fetch_add(1);
                if (j >= n_jobs) return;
                RealizationResult res;
                try {
                    res = run_realization(job_alpha(j), j % per_alpha, config);
                } catch (const std::exception& e) {
                    res.alpha = job_alpha(j);
                    res.index = j % per_alpha;
                    res.ok = false;
                    res.error = e.what();
                }
                {
                    std::lock_guard lock(mu);
                    pending.emplace(j, std::move(res));
                }
                cv.notify_all();
            }
        };

        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < std::min(workers, n_jobs); ++w) pool.emplace_back(worker);

        for (std::size_t j = 0; j < n_jobs; ++j) {
            std::unique_lock lock(mu);
            cv.wait(lock, [&] { return pending.count(j) > 0; });
            auto node = pending.extract(j);
            lock.unlock();
            fold(j, std::move(node.mapped()));
        }
    }

    for (const auto& a : acc) result.per_alpha.push_back(a.summary());
    result.complete = true;

    if (options.out_dir) {
        record_file.close();
        write_sweep_outputs(result, *options.out_dir);
    }
    return result;
}

void write_sweep_outputs(const SweepResult& result, const fs::path& out_dir) {
    using io::format_double;
    fs::create_directories(out_dir);
    const auto& cfg = result.config;

    std::string summary =
        "alpha,completed,failed,N_mean,N_se,N_min,N_max,N_simplified_mean,N_simplified_se,"
        "p_e_end_mean,p_e_end_se,r_mean,r_se,gamma_mean,gamma_se,xi_mean,xi_se\n";
    for (const auto& s : result.per_alpha) {
        summary += format_double(s.alpha) + ',' + std::to_string(s.completed) + ',' +
                   std::to_string(s.failed) + ',' + format_double(s.n.mean) + ',' +
                   format_double(s.n.std_error) + ',' + format_double(s.n.min) + ',' +
                   format_double(s.n.max) + ',' + format_double(s.n_simplified.mean) + ',' +
                   format_double(s.n_simplified.std_error) + ',' + format_double(s.p_e_end.mean) +
                   ',' + format_double(s.p_e_end.std_error) + ',' + format_double(s.r.mean) + ',' +
                   format_double(s.r.std_error) + ',' + format_double(s.gamma.mean) + ',' +
                   format_double(s.gamma.std_error) + ',' + format_double(s.xi.mean) + ',' +
                   format_double(s.xi.std_error) + '\n';
    }
    io::write_text(out_dir / "summary.csv", summary);

    std::vector<std::string> files{"summary.csv"};
    if (cfg.run_dynamics && !result.per_alpha.empty() && !result.per_alpha.front().times.empty()) {
        std::string curves = "t";
        for (const auto& s : result.per_alpha) {
            curves += ",pe_mean_alpha_" + alpha_label(s.alpha) + ",pe_se_alpha_" +
                      alpha_label(s.alpha);
        }
        curves += '\n';
        const auto& times = result.per_alpha.front().times;
        for (std::size_t i = 0; i < times.size(); ++i) {
            curves += format_double(times[i]);
            for (const auto& s : result.per_alpha) {
                const bool has = i < s.p_e_mean.size();
                curves += ',' + format_double(has ? s.p_e_mean[i] : NAN);
                curves += ',' + format_double(has ? s.p_e_std_error[i] : NAN);
            }
            curves += '\n';
        }
        io::write_text(out_dir / "pe_curves.csv", curves);
        files.push_back("pe_curves.csv");
    }
    if (fs::exists(out_dir / "realizations.csv")) files.push_back("realizations.csv");

    json manifest = manifest_base("sweep");
    manifest["config"] = config_json(cfg);
    manifest["complete"] = result.complete;
    manifest["expected_records"] = cfg.alphas.size() * cfg.n_realizations;
    manifest["records"] = result.records.size();
    manifest["failed"] = result.failed;
    manifest["files"] = file_entries(out_dir, files);
    io::write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Figures

double markovian_reference(double t, double g, double hopping) {
    return std::exp(-g * g * t / hopping);
}

FigureName parse_figure_name(const std::string& name) {
    if (name == "fig2") return FigureName::fig2;
    if (name == "fig3") return FigureName::fig3;
    if (name == "fig4") return FigureName::fig4;
    throw std::invalid_argument("unknown figure '" + name + "' (expected fig2, fig3 or fig4)");
}

FigureScale parse_figure_scale(const std::string& name) {
    if (name == "desk") return FigureScale::desk();
    if (name == "paper") return FigureScale::paper();
    throw std::invalid_argument("unknown scale '" + name + "' (expected desk or paper)");
}

const char* to_string(FigureName name) noexcept {
    switch (name) {
    case FigureName::fig2: return "fig2";
    case FigureName::fig3: return "fig3";
    case FigureName::fig4: return "fig4";
    }
    return "?";
}

namespace {

SweepConfig figure_sweep_config(const FigureScale& scale, const FigureOptions& options,
                                std::vector<double> alphas) {
    SweepConfig cfg;
    cfg.alphas = std::move(alphas);
    cfg.n_realizations = scale.n_realizations;
    cfg.master_seed = options.master_seed;
    cfg.system.n_cavities = scale.n_cavities;
    cfg.t_max = scale.t_max;
    cfg.spectral_n = scale.spectral_n;
    cfg.workers = options.workers;
    return cfg;
}

json scale_json(const FigureScale& scale) {
    return {{"name", scale.name},
            {"n_cavities", scale.n_cavities},
            {"n_realizations", scale.n_realizations},
            {"t_max", scale.t_max},
            {"spectral_n", scale.spectral_n}};
}

std::string density_csv(const SpectralDensity& density) {
    std::string s = "omega,G\n";
    for (std::size_t b = 0; b < density.values.size(); ++b) {
        s += io::format_double(density.bin_centers[b]) + ',' +
             io::format_double(density.values[b]) + '\n';
    }
    return s;
}

FigureOutput figure2(const FigureScale& scale, const fs::path& dir, const FigureOptions& opt) {
    SweepConfig cfg = figure_sweep_config(scale, opt, opt.fig2_alphas);
    cfg.run_spectral = false;
    SweepResult sweep = run_sweep(cfg, {dir / "fig2_sweep"});

    std::string csv = "t,markov_reference";
    for (const auto& s : sweep.per_alpha) {
        csv += ",pe_mean_alpha_" + alpha_label(s.alpha) + ",pe_se_alpha_" + alpha_label(s.alpha);
    }
    csv += '\n';
    const auto& times = sweep.per_alpha.front().times;
    for (std::size_t i = 0; i < times.size(); ++i) {
        csv += io::format_double(times[i]) + ',' +
               io::format_double(markovian_reference(times[i], cfg.system.coupling,
                                                     cfg.system.hopping));
        for (const auto& s : sweep.per_alpha) {
            csv += ',' + io::format_double(s.p_e_mean[i]) + ',' +
                   io::format_double(s.p_e_std_error[i]);
        }
        csv += '\n';
    }
    io::write_text(dir / "fig2_pe.csv", csv);

    json manifest = manifest_base("figure");
    manifest["figure"] = "fig2";
    manifest["scale"] = scale_json(scale);
    manifest["alphas"] = cfg.alphas;
    manifest["coupling"] = cfg.system.coupling;
    manifest["master_seed"] = cfg.master_seed;
    manifest["sweep_dir"] = "fig2_sweep";
    manifest["files"] = file_entries(dir, {"fig2_pe.csv"});
    io::write_text(dir / "fig2_manifest.json", manifest.dump(2) + "\n");

    FigureOutput out;
    out.files = {dir / "fig2_pe.csv", dir / "fig2_manifest.json"};
    out.sweep = std::move(sweep);
    return out;
}

FigureOutput figure3(const FigureScale& scale, const fs::path& dir, const FigureOptions& opt) {
    SystemConfig chain;
    chain.n_cavities = scale.spectral_n;
    const std::uint64_t seed =
        realization_seed(opt.master_seed, opt.fig3_alpha, 0, StreamPurpose::figure);
    RngStream stream(seed);
    const auto series = sample_series(chain.n_cavities, opt.fig3_alpha, stream);

    const auto field = build_free_field(chain, series);
    const auto spectrum = TridiagonalSpectrum::compute(field.diag, field.off);
    auto couplings = spectrum.site_amplitudes(chain.atom_site() - 1);
    for (double& v : couplings) v *= chain.coupling;
    io::write_text(dir / "fig3_density.csv",
                   density_csv(spectral_density(spectrum.eigenvalues(), couplings)));

    const std::vector<double> flat(chain.n_cavities, 0.0);
    const auto clean = build_free_field(chain, flat);
    const auto clean_spectrum = TridiagonalSpectrum::compute(clean.diag, clean.off);
    auto clean_couplings = clean_spectrum.site_amplitudes(chain.atom_site() - 1);
    for (double& v : clean_couplings) v *= chain.coupling;
    io::write_text(dir / "fig3_density_homogeneous.csv",
                   density_csv(spectral_density(clean_spectrum.eigenvalues(), clean_couplings)));

    PropagatorSettings settings;
    settings.record_stride = opt.fig3_stride;
    const auto n_points = static_cast<std::size_t>(std::llround(6.0 / opt.fig3_step)) + 1;
    std::string heat = "omega_a,t,p_e\n";
    for (std::size_t i = 0; i < n_points; ++i) {
        const double omega_a = -3.0 + static_cast<double>(i) * opt.fig3_step;
        SystemConfig cfg = chain;
        cfg.atom_frequency = omega_a;
        const auto hamiltonian = build_full_hamiltonian(cfg, series);
        const auto traj = evolve(hamiltonian, settings, scale.t_max);
        for (std::size_t s = 0; s < traj.size(); ++s) {
            heat += io::format_double(omega_a) + ',' + io::format_double(traj.times[s]) + ',' +
                    io::format_double(traj.p_e[s]) + '\n';
        }
    }
    io::write_text(dir / "fig3_heatmap.csv", heat);

    json manifest = manifest_base("figure");
    manifest["figure"] = "fig3";
    manifest["scale"] = scale_json(scale);
    manifest["alpha"] = opt.fig3_alpha;
    manifest["seed"] = seed;
    manifest["n_cavities"] = chain.n_cavities;
    manifest["coupling"] = chain.coupling;
    manifest["bin_width"] = kDefaultBinWidth;
    manifest["band_min"] = spectrum.eigenvalues().front();
    manifest["band_max"] = spectrum.eigenvalues().back();
    manifest["files"] = file_entries(
        dir, {"fig3_density.csv", "fig3_density_homogeneous.csv", "fig3_heatmap.csv"});
    io::write_text(dir / "fig3_manifest.json", manifest.dump(2) + "\n");

    FigureOutput out;
    out.files = {dir / "fig3_density.csv", dir / "fig3_density_homogeneous.csv",
                 dir / "fig3_heatmap.csv", dir / "fig3_manifest.json"};
    return out;
}

FigureOutput figure4(const FigureScale& scale, const fs::path& dir, const FigureOptions& opt) {
    const SweepConfig cfg = figure_sweep_config(scale, opt, opt.fig4_alphas);
    SweepResult sweep = run_sweep(cfg, {dir / "fig4_sweep"});

    std::string csv = "alpha,N_mean,N_se,r_mean,r_se,N_bath_plus_mode,bath_plus_mode_valid,"
                      "N_lorentzian,lorentzian_valid\n";
    for (const auto& s : sweep.per_alpha) {
        const auto bpm = predict_non_markovianity(EffectiveModelKind::bath_plus_mode, s.r.mean);
        const auto lor = predict_non_markovianity(EffectiveModelKind::lorentzian, s.r.mean);
        csv += io::format_double(s.alpha) + ',' + io::format_double(s.n.mean) + ',' +
               io::format_double(s.n.std_error) + ',' + io::format_double(s.r.mean) + ',' +
               io::format_double(s.r.std_error) + ',' + io::format_double(bpm.n) + ',' +
               (bpm.valid ? "1" : "0") + ',' + io::format_double(lor.n) + ',' +
               (lor.valid ? "1" : "0") + '\n';
    }
    io::write_text(dir / "fig4_nonmarkov.csv", csv);

    json manifest = manifest_base("figure");
    manifest["figure"] = "fig4";
    manifest["scale"] = scale_json(scale);
    manifest["alphas"] = cfg.alphas;
    manifest["master_seed"] = cfg.master_seed;
    manifest["sweep_dir"] = "fig4_sweep";
    manifest["files"] = file_entries(dir, {"fig4_nonmarkov.csv"});
    io::write_text(dir / "fig4_manifest.json", manifest.dump(2) + "\n");

    FigureOutput out;
    out.files = {dir / "fig4_nonmarkov.csv", dir / "fig4_manifest.json"};
    out.sweep = std::move(sweep);
    return out;
}

} // namespace

FigureOutput reproduce_figure(FigureName name, const FigureScale& scale, const fs::path& out_dir,
                              const FigureOptions& options) {
    fs::create_directories(out_dir);
    switch (name) {
    case FigureName::fig2: return figure2(scale, out_dir, options);
    case FigureName::fig3: return figure3(scale, out_dir, options);
    case FigureName::fig4: return figure4(scale, out_dir, options);
    }
    throw std::invalid_argument("unknown figure");
}

} // namespace cca
