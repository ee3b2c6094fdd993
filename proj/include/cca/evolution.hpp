// evolution.hpp: truncated-Taylor propagation of the single-excitation state

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cca/model.hpp"

namespace cca {

// dt is in units of 1/J; the default J*dt = 0.1 with a 12th-order expansion.
struct PropagatorSettings {
    double dt = 0.1;
    int taylor_order = 12;
    std::size_t record_stride = 1;

    void validate() const;
};

// Provenance of a trajectory. alpha and seed are meaningful only when disordered.
struct ConfigDigest {
    std::size_t n_cavities = 0;
    double coupling = 0.0;
    double atom_frequency = 0.0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    bool disordered = false;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> p_e;
    std::vector<double> norm;
    PropagatorSettings settings;
    ConfigDigest config_digest;

    std::size_t size() const noexcept { return times.size(); }
};

// Emitter excited, field in vacuum: (1, 0, ..., 0).
std::vector<cplx> initial_state(std::size_t dimension);

// Reusable propagator holding the Taylor work buffers.
class TaylorPropagator {
public:
    TaylorPropagator(const SingleExcitationHamiltonian& hamiltonian, PropagatorSettings settings);

    // v <- sum_{l=0}^{n0} (-i H dt)^l / l! v, accumulated term by term.
    void step(std::vector<cplx>& v);

    const PropagatorSettings& settings() const noexcept { return settings_; }

private:
    const SingleExcitationHamiltonian& hamiltonian_;
    PropagatorSettings settings_;
    std::vector<cplx> term_;
    std::vector<cplx> next_;
};

// Single step on a copy of v.
std::vector<cplx> taylor_step(const SingleExcitationHamiltonian& hamiltonian,
                              std::span<const cplx> v, const PropagatorSettings& settings);

double norm(std::span<const cplx> v);
double energy(const SingleExcitationHamiltonian& hamiltonian, std::span<const cplx> v);

// Number of steps covering [0, t_max] on the dt grid.
std::size_t step_count(double t_max, double dt);

// Evolves the canonical initial state up to t_max, recording p_e and the norm
// every record_stride steps (including t = 0). No renormalization is applied.
// Throws NumericalError("norm blowup") if the norm leaves [0.99, 1.01].
Trajectory evolve(const SingleExcitationHamiltonian& hamiltonian,
                  const PropagatorSettings& settings, double t_max,
                  const ConfigDigest& digest = {});

// Same, starting from an arbitrary state and also returning the final state.
Trajectory evolve_state(const SingleExcitationHamiltonian& hamiltonian,
                        const PropagatorSettings& settings, double t_max,
                        std::vector<cplx>& state, const ConfigDigest& digest = {});

} // namespace cca
