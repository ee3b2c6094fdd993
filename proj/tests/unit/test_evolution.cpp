#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cca/disorder.hpp"
#include "cca/eigensolver.hpp"
#include "cca/errors.hpp"
#include "cca/evolution.hpp"
#include "cca/model.hpp"
#include "cca/rng.hpp"
#include "oracles/dense.hpp"

using namespace cca;

namespace {

SystemConfig config_of(std::size_t n, double g, double omega_a = 0.0) {
    SystemConfig c;
    c.n_cavities = n;
    c.coupling = g;
    c.atom_frequency = omega_a;
    return c;
}

SingleExcitationHamiltonian disordered(std::size_t n, double alpha, std::uint64_t seed,
                                       double g = 0.1, double omega_a = 0.0) {
    RngStream s(seed);
    return build_full_hamiltonian(config_of(n, g, omega_a), sample_series(n, alpha, s));
}

SingleExcitationHamiltonian homogeneous(std::size_t n, double g, double omega_a = 0.0) {
    return build_full_hamiltonian(config_of(n, g, omega_a), std::vector<double>(n, 0.0));
}

} // namespace

TEST_CASE("initial state") {
    const auto v = initial_state(4);
    REQUIRE(v.size() == 4);
    CHECK(v[0] == cplx(1.0));
    for (std::size_t i = 1; i < 4; ++i) CHECK(v[i] == cplx(0.0));
    CHECK(norm(v) == 1.0);
    CHECK(std::norm(v[0]) == 1.0);
    CHECK_THROWS_AS(initial_state(1), std::invalid_argument);
}

TEST_CASE("settings validation") {
    PropagatorSettings s;
    CHECK_NOTHROW(s.validate());
    s.dt = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = {};
    s.taylor_order = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = {};
    s.record_stride = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("zero Hamiltonian leaves the state unchanged") {
    const auto h = homogeneous(1, 0.0);
    const std::vector<cplx> v{cplx(0.6, 0.0), cplx(0.0, 0.8)};
    CHECK(taylor_step(h, v, PropagatorSettings{}) == v);
}

TEST_CASE("resonant two-level system follows cos^2(g t)") {
    const double g = 0.1;
    const auto h = homogeneous(1, g);
    const double t_max = 5.0 * std::numbers::pi / g;
    const auto traj = evolve(h, PropagatorSettings{}, t_max);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double c = std::cos(g * traj.times[i]);
        worst = std::max(worst, std::abs(traj.p_e[i] - c * c));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("one Taylor step matches exact propagation") {
    const auto h = disordered(7, 1.0, 3, 0.4, 0.2);
    const auto dense = oracle::dense_matrix(h);
    std::vector<cplx> v(8);
    RngStream s(4);
    double nrm = 0.0;
    for (auto& x : v) {
        x = {s.next_uniform() - 0.5, s.next_uniform() - 0.5};
        nrm += std::norm(x);
    }
    for (auto& x : v) x /= std::sqrt(nrm);
    const auto stepped = taylor_step(h, v, PropagatorSettings{});
    const auto exact = oracle::propagate_exact(dense, v, 0.1);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(stepped[i] - exact[i]) <= 1e-12);
}

TEST_CASE("trajectory grid and first sample") {
    PropagatorSettings s;
    s.record_stride = 10;
    const auto traj = evolve(homogeneous(11, 0.1), s, 5.0);
    REQUIRE(traj.size() == 6);
    CHECK(traj.p_e[0] == 1.0);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        CHECK(traj.times[i] == doctest::Approx(static_cast<double>(i)).epsilon(1e-12));
    }
    CHECK(traj.settings.record_stride == 10);
    CHECK_THROWS_AS(evolve(homogeneous(11, 0.1), s, 0.0), std::invalid_argument);
}

TEST_CASE("step_count treats grid points up to roundoff") {
    CHECK(step_count(300.0, 0.1) == 3000);
    CHECK(step_count(0.3, 0.1) == 3);
    CHECK(step_count(0.35, 0.1) == 4);
    CHECK_THROWS_AS(step_count(-1.0, 0.1), std::invalid_argument);
}

TEST_CASE("homogeneous chain decays at the golden-rule rate") {
    const double g = 0.1;
    const auto traj = evolve(homogeneous(1001, g), PropagatorSettings{}, 300.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        worst = std::max(worst, std::abs(traj.p_e[i] - std::exp(-g * g * traj.times[i])));
    }
    CHECK(worst <= 0.02);
}

TEST_CASE("decoupled atom never decays") {
    const auto traj = evolve(disordered(101, 2.0, 5, 0.0), PropagatorSettings{}, 50.0);
    for (double p : traj.p_e) CHECK(std::abs(p - 1.0) <= 1e-12);
}

TEST_CASE("atom far above the band stays excited") {
    const std::size_t n = 1201;
    RngStream s(derive_seed(1, {3}));
    const auto series = sample_series(n, 3.0, s);
    const auto field = build_free_field(config_of(n, 0.1), series);
    const double top = tridiagonal_eigenvalues(field.diag, field.off).back();
    CAPTURE(top);
    const auto cfg = config_of(n, 0.1, top + 0.5);
    const auto traj = evolve(build_full_hamiltonian(cfg, series), PropagatorSettings{}, 300.0);
    CHECK(traj.p_e.back() > 0.9);
}

TEST_CASE("norm is conserved to 1e-7 over long runs") {
    for (double alpha : {0.0, 3.0}) {
        RngStream s(derive_seed(2, {static_cast<std::uint64_t>(alpha)}));
        const auto series = sample_series(1201, alpha, s);
        const double eps_max = std::max(std::abs(*std::max_element(series.values.begin(), series.values.end())),
                                        std::abs(*std::min_element(series.values.begin(), series.values.end())));
        REQUIRE(eps_max <= 5.0);
        PropagatorSettings settings;
        settings.record_stride = 10;
        const auto traj = evolve(build_full_hamiltonian(config_of(1201, 0.1), series), settings, 600.0);
        for (double nrm : traj.norm) REQUIRE(std::abs(nrm - 1.0) <= 1e-7);
    }
}

TEST_CASE("energy is conserved") {
    const auto h = disordered(401, 2.0, 9, 0.1, 0.5);
    auto state = initial_state(h.dimension());
    const double e0 = energy(h, state);
    REQUIRE(e0 == doctest::Approx(0.5));
    evolve_state(h, PropagatorSettings{}, 300.0, state);
    CHECK(std::abs(energy(h, state) - e0) <= 1e-8 * std::abs(e0));
}

TEST_CASE("halving dt changes p_e by at most 1e-9") {
    const auto h = disordered(601, 2.0, 12);
    PropagatorSettings coarse;
    PropagatorSettings fine;
    fine.dt = 0.05;
    fine.record_stride = 2;
    const auto a = evolve(h, coarse, 200.0);
    const auto b = evolve(h, fine, 200.0);
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.p_e[i] - b.p_e[i]));
    CHECK(worst <= 1e-9);
}

TEST_CASE("oversized steps raise norm blowup") {
    PropagatorSettings s;
    s.dt = 3.0;
    CHECK_THROWS_AS(evolve(homogeneous(101, 0.1), s, 60.0), NumericalError);
}

TEST_CASE("light cone stays away from the chain ends") {
    // Worst case for reflections: no disorder, fastest group velocity 2J.
    const std::size_t n = 6201;
    const auto h = homogeneous(n, 0.1);
    auto state = initial_state(h.dimension());
    evolve_state(h, PropagatorSettings{}, 600.0, state);
    double edge = 0.0;
    for (std::size_t i = 1; i <= 10; ++i) edge += std::norm(state[i]) + std::norm(state[n + 1 - i]);
    CAPTURE(edge);
    CHECK(edge < 1e-6);
}
