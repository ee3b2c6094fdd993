#include "cca/evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "cca/errors.hpp"

namespace cca {

void PropagatorSettings::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
    if (taylor_order < 1) throw std::invalid_argument("taylor_order must be >= 1");
    if (record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
}

std::vector<cplx> initial_state(std::size_t dimension) {
    if (dimension < 2) throw std::invalid_argument("dimension must be >= 2");
    std::vector<cplx> v(dimension, cplx{0.0, 0.0});
    v[0] = 1.0;
    return v;
}

TaylorPropagator::TaylorPropagator(const SingleExcitationHamiltonian& hamiltonian,
                                   PropagatorSettings settings)
    : hamiltonian_(hamiltonian), settings_(settings), term_(hamiltonian.dimension()),
      next_(hamiltonian.dimension()) {
    settings_.validate();
}

void TaylorPropagator::step(std::vector<cplx>& v) {
    const std::size_t dim = hamiltonian_.dimension();
    if (v.size() != dim) throw std::invalid_argument("state dimension mismatch");

    term_.assign(v.begin(), v.end());
    for (int l = 1; l <= settings_.taylor_order; ++l) {
        hamiltonian_.apply(term_, next_);
        // term_l = (-i dt / l) H term_{l-1}; multiply by -i as (re, im) -> (im, -re).
        const double scale = settings_.dt / static_cast<double>(l);
        for (std::size_t n = 0; n < dim; ++n) {
            const cplx h = next_[n];
            const cplx t{scale * h.imag(), -scale * h.real()};
            term_[n] = t;
            v[n] += t;
        }
    }
}

std::vector<cplx> taylor_step(const SingleExcitationHamiltonian& hamiltonian,
                              std::span<const cplx> v, const PropagatorSettings& settings) {
    std::vector<cplx> out(v.begin(), v.end());
    TaylorPropagator prop(hamiltonian, settings);
    prop.step(out);
    return out;
}

double norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

double energy(const SingleExcitationHamiltonian& hamiltonian, std::span<const cplx> v) {
    const auto hv = hamiltonian.apply(v);
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * hv[i];
    return s.real();
}

std::size_t step_count(double t_max, double dt) {
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    const double ratio = t_max / dt;
    const double rounded = std::round(ratio);
    // Tolerate t_max values that are grid points up to roundoff.
    if (std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, ratio)) {
        return static_cast<std::size_t>(rounded);
    }
    return static_cast<std::size_t>(std::ceil(ratio));
}

Trajectory evolve_state(const SingleExcitationHamiltonian& hamiltonian,
                        const PropagatorSettings& settings, double t_max,
                        std::vector<cplx>& state, const ConfigDigest& digest) {
    settings.validate();
    const std::size_t n_steps = step_count(t_max, settings.dt);
    const std::size_t stride = settings.record_stride;

    Trajectory traj;
    traj.settings = settings;
    traj.config_digest = digest;
    const std::size_t n_records = n_steps / stride + 1;
    traj.times.reserve(n_records);
    traj.p_e.reserve(n_records);
    traj.norm.reserve(n_records);

    auto record = [&](std::size_t step, double nrm) {
        traj.times.push_back(static_cast<double>(step) * settings.dt);
        traj.p_e.push_back(std::norm(state[0]));
        traj.norm.push_back(nrm);
    };

    TaylorPropagator prop(hamiltonian, settings);
    record(0, norm(state));
    for (std::size_t s = 1; s <= n_steps; ++s) {
        prop.step(state);
        const double nrm = norm(state);
        if (!(nrm >= 0.99 && nrm <= 1.01)) {
            throw NumericalError("norm blowup at t = " +
                                 std::to_string(static_cast<double>(s) * settings.dt) +
                                 " (norm " + std::to_string(nrm) + ")");
        }
        if (s % stride == 0) record(s, nrm);
    }
    return traj;
}

Trajectory evolve(const SingleExcitationHamiltonian& hamiltonian,
                  const PropagatorSettings& settings, double t_max, const ConfigDigest& digest) {
    auto state = initial_state(hamiltonian.dimension());
    return evolve_state(hamiltonian, settings, t_max, state, digest);
}

} // namespace cca
