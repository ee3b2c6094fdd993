#include "doctest.h"

#include <chrono>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "cca/disorder.hpp"
#include "cca/model.hpp"
#include "cca/rng.hpp"

using namespace cca;

namespace {

SystemConfig config_of(std::size_t n, double g, double omega_a = 0.0) {
    SystemConfig c;
    c.n_cavities = n;
    c.coupling = g;
    c.atom_frequency = omega_a;
    return c;
}

std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
    RngStream s(seed);
    std::vector<cplx> v(n);
    for (auto& x : v) x = {s.next_uniform() - 0.5, s.next_uniform() - 0.5};
    return v;
}

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double norm2(const std::vector<cplx>& a) { return std::sqrt(std::real(inner(a, a))); }

// Brute-force dense assembly straight from the graph.
std::vector<double> hand_dense(const SystemConfig& c, const std::vector<double>& eps) {
    const std::size_t d = c.n_cavities + 1;
    std::vector<double> m(d * d, 0.0);
    m[0] = c.atom_frequency;
    for (std::size_t n = 1; n <= c.n_cavities; ++n) m[n * d + n] = eps[n - 1];
    for (std::size_t n = 1; n < c.n_cavities; ++n) {
        m[n * d + n + 1] = c.hopping;
        m[(n + 1) * d + n] = c.hopping;
    }
    const std::size_t s = c.atom_site();
    m[s] = c.coupling;
    m[s * d] = c.coupling;
    return m;
}

} // namespace

TEST_CASE("SystemConfig validation") {
    CHECK_NOTHROW(config_of(3, 0.1).validate());
    CHECK_NOTHROW(config_of(1, 0.1).validate());
    CHECK_THROWS_AS(config_of(4, 0.1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(config_of(0, 0.1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(config_of(5, -0.1).validate(), std::invalid_argument);
    CHECK(config_of(1201, 0.1).atom_site() == 601);
}

TEST_CASE("three-cavity homogeneous Hamiltonian in dense form") {
    const auto h = build_full_hamiltonian(config_of(3, 0.1), std::vector<double>(3, 0.0));
    const std::vector<double> expected{0, 0, 0.1, 0, 0, 0, 1, 0, 0.1, 1, 0, 1, 0, 0, 1, 0};
    CHECK(h.dense() == expected);
    CHECK(h.dimension() == 4);
    CHECK(h.atom_site() == 2);
}

TEST_CASE("g = 0 decouples the atom") {
    const auto h = build_full_hamiltonian(config_of(5, 0.0, 0.7), std::vector<double>(5, 0.3));
    const auto m = h.dense();
    for (std::size_t j = 1; j < 6; ++j) {
        CHECK(m[j] == 0.0);
        CHECK(m[j * 6] == 0.0);
    }
    CHECK(m[0] == 0.7);
}

TEST_CASE("five-cavity disordered Hamiltonian matches hand assembly") {
    RngStream s(17);
    const auto series = sample_series(5, 0.0, s);
    const auto cfg = config_of(5, 0.1, 0.25);
    const auto h = build_full_hamiltonian(cfg, series);
    CHECK(h.dense() == hand_dense(cfg, series.values));
}

TEST_CASE("size mismatch between config and series is rejected") {
    RngStream s(1);
    const auto series = sample_series(7, 1.0, s);
    CHECK_THROWS_AS(build_full_hamiltonian(config_of(5, 0.1), series), std::invalid_argument);
    CHECK_THROWS_AS(build_free_field(config_of(5, 0.1), series), std::invalid_argument);
}

TEST_CASE("free field of the three-cavity chain") {
    const auto op = build_free_field(config_of(3, 0.1), std::vector<double>(3, 0.0));
    CHECK(op.diag == std::vector<double>{0, 0, 0});
    CHECK(op.off == std::vector<double>{1, 1});
    const std::vector<double> e2{0.0, 1.0, 0.0};
    CHECK(op.apply(e2) == std::vector<double>{1.0, 0.0, 1.0});
}

TEST_CASE("free-field block of the full Hamiltonian equals the free field") {
    RngStream s(23);
    const auto series = sample_series(9, 2.0, s);
    const auto cfg = config_of(9, 0.1);
    const auto full = build_full_hamiltonian(cfg, series).dense();
    const auto op = build_free_field(cfg, series);
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(full[(i + 1) * 10 + i + 1] == op.diag[i]);
        if (i + 1 < 9) CHECK(full[(i + 1) * 10 + i + 2] == op.off[i]);
    }
}

TEST_CASE("apply on the atom basis vector") {
    const auto h = build_full_hamiltonian(config_of(7, 0.1), std::vector<double>(7, 0.0));
    std::vector<cplx> v(8, 0.0);
    v[0] = 1.0;
    const auto w = h.apply(v);
    for (std::size_t i = 0; i < 8; ++i) CHECK(w[i] == (i == 4 ? cplx(0.1) : cplx(0.0)));
}

TEST_CASE("apply on the uniform vector gives chain row sums") {
    const auto h = build_full_hamiltonian(config_of(7, 0.0), std::vector<double>(7, 0.0));
    const std::vector<cplx> v(8, 1.0);
    const auto w = h.apply(v);
    CHECK(w[0] == cplx(0.0));
    CHECK(w[1] == cplx(1.0));
    CHECK(w[7] == cplx(1.0));
    for (std::size_t i = 2; i < 7; ++i) CHECK(w[i] == cplx(2.0));
}

TEST_CASE("apply matches the dense product") {
    RngStream s(31);
    const auto series = sample_series(7, 1.5, s);
    const auto h = build_full_hamiltonian(config_of(7, 0.3, -0.4), series);
    const auto m = h.dense();
    const auto v = random_vector(8, 2);
    const auto w = h.apply(v);
    for (std::size_t i = 0; i < 8; ++i) {
        cplx ref = 0.0;
        for (std::size_t j = 0; j < 8; ++j) ref += m[i * 8 + j] * v[j];
        CHECK(std::abs(w[i] - ref) <= 1e-14);
    }
}

TEST_CASE("apply rejects dimension mismatch") {
    const auto h = build_full_hamiltonian(config_of(3, 0.1), std::vector<double>(3, 0.0));
    std::vector<cplx> v(3, 0.0);
    CHECK_THROWS_AS(h.apply(v), std::invalid_argument);
}

TEST_CASE("apply is Hermitian") {
    RngStream s(8);
    const auto series = sample_series(1201, 3.0, s);
    const auto h = build_full_hamiltonian(config_of(1201, 0.1, 0.2), series);
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
        const auto u = random_vector(1202, 100 + trial);
        const auto v = random_vector(1202, 200 + trial);
        const auto lhs = inner(u, h.apply(v));
        const auto rhs = inner(h.apply(u), v);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * norm2(u) * norm2(v));
    }
}

TEST_CASE("apply cost is linear in N") {
    auto time_apply = [](std::size_t n) {
        const auto h = build_full_hamiltonian(config_of(n, 0.1), std::vector<double>(n, 0.0));
        std::vector<cplx> v(n + 1, 1.0), w(n + 1);
        const int reps = static_cast<int>(20000000 / n);
        const auto t0 = std::chrono::steady_clock::now();
        for (int r = 0; r < reps; ++r) {
            h.apply(v, w);
            v[r % (n + 1)] = w[0];
        }
        const auto t1 = std::chrono::steady_clock::now();
        return std::chrono::duration<double>(t1 - t0).count() / reps;
    };
    time_apply(10001); // warm up
    const double small = time_apply(10001);
    const double large = time_apply(160001);
    // 16x the work; allow generous slack for cache effects and noisy machines.
    CHECK(large / small > 4.0);
    CHECK(large / small < 64.0);
}
