// cca-decay: command-line front end for the disorder / dynamics / ensemble pipeline.

#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cca/disorder.hpp"
#include "cca/effective.hpp"
#include "cca/eigensolver.hpp"
#include "cca/ensemble.hpp"
#include "cca/errors.hpp"
#include "cca/evolution.hpp"
#include "cca/io.hpp"
#include "cca/model.hpp"
#include "cca/nonmarkov.hpp"
#include "cca/rng.hpp"
#include "cca/spectral.hpp"
#include "cca/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Non-finite values are not valid JSON numbers.
json number(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

json params_json(const cca::EffectiveParams& p) {
    return {{"gamma", number(p.gamma)},
            {"window_weight", number(p.window_weight)},
            {"ell", p.ell},
            {"omega_ell", number(p.omega_ell)},
            {"xi", number(p.xi)},
            {"g_ell", number(p.g_ell)},
            {"r", number(p.r)}};
}

json nonmarkov_json(const cca::NonMarkovianityResult& r) {
    return {{"schema_version", cca::kSchemaVersion},
            {"N", number(r.n)},
            {"n_v", number(r.n_v)},
            {"n_tilde", number(r.n_tilde)},
            {"method", cca::to_string(r.method)},
            {"n_v_extrema", number(r.n_v_extrema)},
            {"N_simplified", number(r.n_simplified)}};
}

struct DisorderArgs {
    std::size_t n = 1001;
    double alpha = 2.0;
    std::uint64_t seed = 42;
    fs::path out = "series.csv";
};

void run_disorder(const DisorderArgs& a) {
    cca::RngStream stream(a.seed);
    const auto series = cca::sample_series(a.n, a.alpha, stream);
    cca::io::write_series(a.out, series);
    std::cout << "wrote " << a.out.string() << " and " << cca::io::sidecar_path(a.out).string()
              << "\n";
}

struct TrajectoryArgs {
    double alpha = 2.0;
    std::uint64_t seed = 7;
    fs::path out = "traj.csv";
    std::size_t n = 1201;
    double g = 0.1;
    double omega_a = 0.0;
    double t_max = 300.0;
    double dt = 0.1;
    int order = 12;
    std::size_t stride = 1;
    bool homogeneous = false;
};

void run_trajectory(const TrajectoryArgs& a) {
    cca::SystemConfig system;
    system.n_cavities = a.n;
    system.coupling = a.g;
    system.atom_frequency = a.omega_a;
    system.validate();

    cca::PropagatorSettings settings;
    settings.dt = a.dt;
    settings.taylor_order = a.order;
    settings.record_stride = a.stride;
    settings.validate();

    std::vector<double> onsite(a.n, 0.0);
    if (!a.homogeneous) {
        cca::RngStream stream(a.seed);
        onsite = cca::sample_series(a.n, a.alpha, stream).values;
    }
    const auto hamiltonian = cca::build_full_hamiltonian(system, onsite);
    cca::ConfigDigest digest{a.n, a.g, a.omega_a, a.homogeneous ? 0.0 : a.alpha,
                             a.homogeneous ? 0 : a.seed, !a.homogeneous};
    const auto traj = cca::evolve(hamiltonian, settings, a.t_max, digest);
    cca::io::write_trajectory(a.out, traj);
    std::cout << "wrote " << traj.size() << " samples to " << a.out.string() << "\n";
}

struct SpectralArgs {
    std::size_t n = 1001;
    double alpha = 2.0;
    std::uint64_t seed = 42;
    std::size_t count = 1;
    double g = 0.1;
    double omega_a = 0.0;
    double bin_width = cca::kDefaultBinWidth;
    bool homogeneous = false;
    fs::path out = "spectral";
};

void run_spectral(const SpectralArgs& a) {
    cca::SystemConfig chain;
    chain.n_cavities = a.n;
    chain.coupling = a.g;
    chain.atom_frequency = a.omega_a;
    chain.validate();
    fs::create_directories(a.out);

    for (std::size_t i = 0; i < a.count; ++i) {
        const std::uint64_t seed = a.seed + i;
        std::vector<double> onsite(a.n, 0.0);
        if (!a.homogeneous) {
            cca::RngStream stream(seed);
            onsite = cca::sample_series(a.n, a.alpha, stream).values;
        }
        const auto field = cca::build_free_field(chain, onsite);
        const auto spectrum = cca::TridiagonalSpectrum::compute(field.diag, field.off);
        auto couplings = spectrum.site_amplitudes(chain.atom_site() - 1);
        for (double& v : couplings) v *= chain.coupling;
        const auto density =
            cca::spectral_density(spectrum.eigenvalues(), couplings, a.bin_width);
        const auto params = cca::effective_params(spectrum, chain.coupling, chain.atom_site(),
                                                  chain.atom_frequency);

        const std::string stem = "seed_" + std::to_string(seed);
        std::string csv = "omega,G\n";
        for (std::size_t b = 0; b < density.values.size(); ++b) {
            csv += cca::io::format_double(density.bin_centers[b]) + ',' +
                   cca::io::format_double(density.values[b]) + '\n';
        }
        cca::io::write_text(a.out / (stem + "_density.csv"), csv);

        json meta{{"schema_version", cca::kSchemaVersion},
                  {"software_version", cca::kVersion},
                  {"n_cavities", a.n},
                  {"alpha", a.homogeneous ? 0.0 : a.alpha},
                  {"seed", seed},
                  {"homogeneous", a.homogeneous},
                  {"coupling", a.g},
                  {"atom_frequency", a.omega_a},
                  {"bin_width", a.bin_width},
                  {"band_min", spectrum.eigenvalues().front()},
                  {"band_max", spectrum.eigenvalues().back()},
                  {"effective_params", params_json(params)}};
        cca::io::write_text(a.out / (stem + "_params.json"), meta.dump(2) + "\n");
    }
    std::cout << "wrote " << a.count << " spectra to " << a.out.string() << "\n";
}

void run_nonmarkov(const fs::path& in) {
    const auto traj = cca::io::read_trajectory(in);
    std::cout << nonmarkov_json(cca::non_markovianity(traj)).dump(2) << "\n";
}

struct EffectiveArgs {
    std::string model = "lorentzian";
    double r = 1.0;
    double gamma = 0.1;
    double t_max = 200.0;
    double dt = 0.5;
    fs::path out;
};

void run_effective(const EffectiveArgs& a) {
    const auto kind = cca::parse_model_kind(a.model.c_str());
    if (!(a.dt > 0.0) || !(a.t_max > 0.0)) throw std::invalid_argument("dt and t-max must be positive");
    const auto prediction = cca::predict_non_markovianity(kind, a.r);

    std::string csv = "t,p_e\n";
    const auto steps = cca::step_count(a.t_max, a.dt);
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * a.dt;
        const double pe = kind == cca::EffectiveModelKind::bath_plus_mode
                              ? cca::pe_bath_plus_mode(t, a.r, a.gamma)
                              : cca::pe_lorentzian(t, a.r, a.gamma);
        csv += cca::io::format_double(t) + ',' + cca::io::format_double(pe) + '\n';
    }
    json meta{{"schema_version", cca::kSchemaVersion},
              {"model", cca::to_string(kind)},
              {"r", a.r},
              {"gamma", a.gamma},
              {"n_v", number(prediction.n_v)},
              {"N", number(prediction.n)},
              {"valid", prediction.valid}};
    if (a.out.empty()) {
        std::cout << csv;
        std::cerr << meta.dump(2) << "\n";
        return;
    }
    cca::io::write_text(a.out, csv);
    cca::io::write_text(cca::io::sidecar_path(a.out), meta.dump(2) + "\n");
    std::cout << meta.dump(2) << "\n";
}

void run_sweep_command(const fs::path& config_path, const fs::path& out, std::size_t workers) {
    auto config = cca::sweep_config_from_json(cca::io::read_text(config_path));
    if (workers > 0) config.workers = workers;
    const auto result = cca::run_sweep(config, {out});
    std::cout << "sweep finished: " << result.records.size() << " records, " << result.failed
              << " failed, outputs in " << out.string() << "\n";
}

void run_figure(const std::string& name, const std::string& scale, const fs::path& out,
                std::uint64_t seed, std::size_t workers) {
    cca::FigureOptions options;
    options.master_seed = seed;
    options.workers = workers;
    const auto output = cca::reproduce_figure(cca::parse_figure_name(name),
                                              cca::parse_figure_scale(scale), out, options);
    for (const auto& f : output.files) std::cout << f.string() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Atom decay into a disordered coupled-cavity array"};
    app.set_version_flag("--version", std::string(cca::kVersion));
    app.require_subcommand(1);

    DisorderArgs dis;
    auto* cmd_dis = app.add_subcommand("disorder", "Generate one normalized disorder series");
    cmd_dis->add_option("--n", dis.n, "Number of sites (odd)")->capture_default_str();
    cmd_dis->add_option("--alpha", dis.alpha, "Spectral exponent")->capture_default_str();
    cmd_dis->add_option("--seed", dis.seed, "RNG seed")->capture_default_str();
    cmd_dis->add_option("--out", dis.out, "Output CSV")->capture_default_str();

    TrajectoryArgs tr;
    auto* cmd_tr = app.add_subcommand("trajectory", "Evolve the atom for one realization");
    cmd_tr->add_option("--alpha", tr.alpha)->capture_default_str();
    cmd_tr->add_option("--seed", tr.seed)->capture_default_str();
    cmd_tr->add_option("--out", tr.out)->capture_default_str();
    cmd_tr->add_option("--n", tr.n, "Number of cavities (odd)")->capture_default_str();
    cmd_tr->add_option("--g", tr.g, "Atom-cavity coupling")->capture_default_str();
    cmd_tr->add_option("--omega-a", tr.omega_a, "Atom frequency")->capture_default_str();
    cmd_tr->add_option("--t-max", tr.t_max)->capture_default_str();
    cmd_tr->add_option("--dt", tr.dt)->capture_default_str();
    cmd_tr->add_option("--order", tr.order, "Taylor order")->capture_default_str();
    cmd_tr->add_option("--stride", tr.stride, "Record every n-th step")->capture_default_str();
    cmd_tr->add_flag("--homogeneous", tr.homogeneous, "Disable disorder");

    SpectralArgs sp;
    auto* cmd_sp = app.add_subcommand("spectral", "Spectral density and effective parameters");
    cmd_sp->add_option("--n", sp.n)->capture_default_str();
    cmd_sp->add_option("--alpha", sp.alpha)->capture_default_str();
    cmd_sp->add_option("--seed", sp.seed, "First seed")->capture_default_str();
    cmd_sp->add_option("--count", sp.count, "Number of consecutive seeds")->capture_default_str();
    cmd_sp->add_option("--g", sp.g)->capture_default_str();
    cmd_sp->add_option("--omega-a", sp.omega_a)->capture_default_str();
    cmd_sp->add_option("--bin-width", sp.bin_width)->capture_default_str();
    cmd_sp->add_flag("--homogeneous", sp.homogeneous);
    cmd_sp->add_option("--out", sp.out, "Output directory")->capture_default_str();

    fs::path nm_in;
    auto* cmd_nm = app.add_subcommand("nonmarkov", "Non-Markovianity of a trajectory CSV");
    cmd_nm->add_option("--in", nm_in, "Trajectory CSV (t,p_e[,norm])")->required();

    EffectiveArgs ef;
    auto* cmd_ef = app.add_subcommand("effective", "Sample an effective-model closed form");
    cmd_ef->add_option("--model", ef.model, "bath_plus_mode or lorentzian")->capture_default_str();
    cmd_ef->add_option("--r", ef.r)->capture_default_str();
    cmd_ef->add_option("--gamma", ef.gamma)->capture_default_str();
    cmd_ef->add_option("--t-max", ef.t_max)->capture_default_str();
    cmd_ef->add_option("--dt", ef.dt)->capture_default_str();
    cmd_ef->add_option("--out", ef.out, "Output CSV (stdout when omitted)");

    fs::path sw_config;
    fs::path sw_out = "results";
    std::size_t sw_workers = 0;
    auto* cmd_sw = app.add_subcommand("sweep", "Run an alpha sweep from a JSON config");
    cmd_sw->add_option("--config", sw_config, "SweepConfig JSON")->required();
    cmd_sw->add_option("--out", sw_out, "Output directory")->capture_default_str();
    cmd_sw->add_option("--workers", sw_workers, "Override the config's worker count");

    std::string fig_name;
    std::string fig_scale = "desk";
    fs::path fig_out = "results";
    std::uint64_t fig_seed = 1;
    std::size_t fig_workers = 1;
    auto* cmd_fig = app.add_subcommand("figure", "Produce the data behind one figure");
    cmd_fig->add_option("name", fig_name, "fig2, fig3 or fig4")->required();
    cmd_fig->add_option("--scale", fig_scale, "desk or paper")->capture_default_str();
    cmd_fig->add_option("--out", fig_out)->capture_default_str();
    cmd_fig->add_option("--seed", fig_seed, "Master seed")->capture_default_str();
    cmd_fig->add_option("--workers", fig_workers)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_dis) run_disorder(dis);
        else if (*cmd_tr) run_trajectory(tr);
        else if (*cmd_sp) run_spectral(sp);
        else if (*cmd_nm) run_nonmarkov(nm_in);
        else if (*cmd_ef) run_effective(ef);
        else if (*cmd_sw) run_sweep_command(sw_config, sw_out, sw_workers);
        else if (*cmd_fig) run_figure(fig_name, fig_scale, fig_out, fig_seed, fig_workers);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
