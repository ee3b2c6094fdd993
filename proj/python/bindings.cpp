// Python view of the core library. Arrays come back as numpy float64 arrays;
// structured results come back as dicts with the same field names as the CSV/JSON outputs.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "cca/disorder.hpp"
#include "cca/effective.hpp"
#include "cca/eigensolver.hpp"
#include "cca/ensemble.hpp"
#include "cca/errors.hpp"
#include "cca/evolution.hpp"
#include "cca/model.hpp"
#include "cca/nonmarkov.hpp"
#include "cca/spectral.hpp"
#include "cca/version.hpp"

namespace py = pybind11;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_array(const std::vector<double>& v) {
    Array out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

std::span<const double> view(const Array& a) {
    if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
    return {a.data(), static_cast<std::size_t>(a.size())};
}

cca::SystemConfig chain(std::size_t n, double g, double omega_a) {
    cca::SystemConfig c;
    c.n_cavities = n;
    c.coupling = g;
    c.atom_frequency = omega_a;
    c.validate();
    return c;
}

std::vector<double> onsite(std::size_t n, double alpha, std::uint64_t seed, bool homogeneous) {
    if (homogeneous) return std::vector<double>(n, 0.0);
    cca::RngStream stream(seed);
    return cca::sample_series(n, alpha, stream).values;
}

py::dict params_dict(const cca::EffectiveParams& p) {
    py::dict d;
    d["gamma"] = p.gamma;
    d["window_weight"] = p.window_weight;
    d["ell"] = p.ell;
    d["omega_ell"] = p.omega_ell;
    d["xi"] = p.xi;
    d["g_ell"] = p.g_ell;
    d["r"] = p.r;
    return d;
}

py::dict stat_dict(const cca::Statistic& s) {
    py::dict d;
    d["mean"] = s.mean;
    d["std_error"] = s.std_error;
    d["min"] = s.min;
    d["max"] = s.max;
    d["count"] = s.count;
    return d;
}

double model_pe(cca::EffectiveModelKind kind, double t, double r, double gamma) {
    return kind == cca::EffectiveModelKind::bath_plus_mode ? cca::pe_bath_plus_mode(t, r, gamma)
                                                           : cca::pe_lorentzian(t, r, gamma);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Atom coupled to a disordered coupled-cavity array";
    m.attr("__version__") = cca::kVersion;
    m.attr("SCHEMA_VERSION") = cca::kSchemaVersion;

    py::register_exception<cca::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def("sample_series",
          [](std::size_t n, double alpha, std::uint64_t seed) { return to_array(onsite(n, alpha, seed, false)); },
          py::arg("n"), py::arg("alpha"), py::arg("seed"),
          "Normalized correlated on-site series (mean 0, variance 1).");

    m.def("autocorrelation",
          [](const Array& x, std::size_t lag) { return cca::autocorrelation(view(x), lag); },
          py::arg("series"), py::arg("lag"));

    m.def(
        "trajectory",
        [](std::size_t n, double alpha, std::uint64_t seed, double g, double omega_a, double t_max,
           double dt, std::size_t stride, bool homogeneous) {
            cca::PropagatorSettings s;
            s.dt = dt;
            s.record_stride = stride;
            s.validate();
            const auto h = cca::build_full_hamiltonian(chain(n, g, omega_a), onsite(n, alpha, seed, homogeneous));
            cca::Trajectory traj;
            {
                py::gil_scoped_release release;
                traj = cca::evolve(h, s, t_max);
            }
            py::dict d;
            d["t"] = to_array(traj.times);
            d["p_e"] = to_array(traj.p_e);
            d["norm"] = to_array(traj.norm);
            return d;
        },
        py::arg("n") = 1201, py::arg("alpha") = 2.0, py::arg("seed") = 7, py::arg("g") = 0.1,
        py::arg("omega_a") = 0.0, py::arg("t_max") = 300.0, py::arg("dt") = 0.1, py::arg("stride") = 1,
        py::arg("homogeneous") = false, "Excited-state population p_e(t) of the emitter.");

    m.def(
        "non_markovianity",
        [](const Array& t, const Array& p_e) {
            const auto r = cca::non_markovianity(view(t), view(p_e));
            py::dict d;
            d["n_v"] = r.n_v;
            d["n_tilde"] = r.n_tilde;
            d["N"] = r.n;
            d["method"] = cca::to_string(r.method);
            d["n_v_extrema"] = r.n_v_extrema;
            d["N_simplified"] = r.n_simplified;
            return d;
        },
        py::arg("t"), py::arg("p_e"));

    m.def(
        "find_extrema",
        [](const Array& t, const Array& p_e) {
            const auto ex = cca::find_extrema(view(t), view(p_e));
            std::vector<double> tm, vm, tn, vn;
            for (const auto& e : ex.maxima) tm.push_back(e.time), vm.push_back(e.volume);
            for (const auto& e : ex.minima) tn.push_back(e.time), vn.push_back(e.volume);
            py::dict d;
            d["max_t"] = to_array(tm);
            d["max_p2"] = to_array(vm);
            d["min_t"] = to_array(tn);
            d["min_p2"] = to_array(vn);
            return d;
        },
        py::arg("t"), py::arg("p_e"), "Interior extrema of p_e^2.");

    m.def(
        "spectral",
        [](std::size_t n, double alpha, std::uint64_t seed, double g, double omega_a, double bin_width,
           bool homogeneous) {
            const auto c = chain(n, g, omega_a);
            const auto field = cca::build_free_field(c, onsite(n, alpha, seed, homogeneous));
            const auto spectrum = cca::TridiagonalSpectrum::compute(field.diag, field.off);
            auto couplings = spectrum.site_amplitudes(c.atom_site() - 1);
            for (double& v : couplings) v *= g;
            const auto density = cca::spectral_density(spectrum.eigenvalues(), couplings, bin_width);
            py::dict d;
            d["eigenvalues"] = to_array(spectrum.eigenvalues());
            d["couplings"] = to_array(couplings);
            d["omega"] = to_array(density.bin_centers);
            d["G"] = to_array(density.values);
            d["params"] = params_dict(cca::effective_params(spectrum, g, c.atom_site(), omega_a));
            return d;
        },
        py::arg("n") = 1001, py::arg("alpha") = 2.0, py::arg("seed") = 42, py::arg("g") = 0.1,
        py::arg("omega_a") = 0.0, py::arg("bin_width") = cca::kDefaultBinWidth, py::arg("homogeneous") = false,
        "Spectrum, binned G(omega) and effective parameters (gamma, xi, g_ell, r).");

    m.def(
        "pe_model",
        [](const std::string& model, const Array& t, double r, double gamma) {
            const auto kind = cca::parse_model_kind(model.c_str());
            const auto ts = view(t);
            std::vector<double> out(ts.size());
            for (std::size_t i = 0; i < ts.size(); ++i) out[i] = model_pe(kind, ts[i], r, gamma);
            return to_array(out);
        },
        py::arg("model"), py::arg("t"), py::arg("r"), py::arg("gamma"),
        "Closed-form p_e(t) of 'bath_plus_mode' or 'lorentzian'.");

    m.def(
        "predict",
        [](const std::string& model, double r) {
            const auto p = cca::predict_non_markovianity(cca::parse_model_kind(model.c_str()), r);
            py::dict d;
            d["n_v"] = p.n_v;
            d["N"] = p.n;
            d["valid"] = p.valid;
            return d;
        },
        py::arg("model"), py::arg("r"), "Closed-form N_V and N of an effective model.");

    m.def(
        "lindblad_bath_plus_mode",
        [](double r, double gamma, double t_max, double dt) {
            const auto traj = cca::integrate_lindblad_bath_plus_mode(r, gamma, t_max, dt);
            py::dict d;
            d["t"] = to_array(traj.times);
            d["p_e"] = to_array(traj.p_e);
            d["trace"] = to_array(traj.trace);
            return d;
        },
        py::arg("r"), py::arg("gamma"), py::arg("t_max"), py::arg("dt") = 0.01);

    m.def(
        "realization_seed",
        [](std::uint64_t master, double alpha, std::size_t index, const std::string& purpose) {
            cca::StreamPurpose p;
            if (purpose == "dynamics") p = cca::StreamPurpose::dynamics;
            else if (purpose == "spectral") p = cca::StreamPurpose::spectral;
            else if (purpose == "figure") p = cca::StreamPurpose::figure;
            else throw std::invalid_argument("purpose must be dynamics, spectral or figure");
            return cca::realization_seed(master, alpha, index, p);
        },
        py::arg("master_seed"), py::arg("alpha"), py::arg("index"), py::arg("purpose") = "dynamics");

    m.def(
        "run_sweep",
        [](const std::string& config_json, const std::filesystem::path& out_dir) {
            auto config = cca::sweep_config_from_json(config_json);
            cca::SweepResult res;
            {
                py::gil_scoped_release release;
                res = cca::run_sweep(config, {out_dir});
            }
            py::list rows;
            for (const auto& s : res.per_alpha) {
                py::dict d;
                d["alpha"] = s.alpha;
                d["completed"] = s.completed;
                d["failed"] = s.failed;
                d["N"] = stat_dict(s.n);
                d["N_simplified"] = stat_dict(s.n_simplified);
                d["p_e_end"] = stat_dict(s.p_e_end);
                d["r"] = stat_dict(s.r);
                d["gamma"] = stat_dict(s.gamma);
                d["xi"] = stat_dict(s.xi);
                rows.append(d);
            }
            return rows;
        },
        py::arg("config_json"), py::arg("out_dir"),
        "Runs an ensemble sweep, writes its outputs to out_dir and returns per-alpha summaries.");

    m.def(
        "reproduce_figure",
        [](const std::string& name, const std::string& scale, const std::filesystem::path& out_dir,
           std::uint64_t seed, std::size_t workers) {
            cca::FigureOptions opt;
            opt.master_seed = seed;
            opt.workers = cca::effective_workers(workers);
            cca::FigureOutput out;
            {
                py::gil_scoped_release release;
                out = cca::reproduce_figure(cca::parse_figure_name(name), cca::parse_figure_scale(scale),
                                            out_dir, opt);
            }
            return out.files;
        },
        py::arg("name"), py::arg("scale") = "desk", py::arg("out_dir") = "results", py::arg("seed") = 1,
        py::arg("workers") = 1, "Writes the CSV data and manifest behind fig2, fig3 or fig4.");
}
