#include "cca/effective.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstring>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cca/errors.hpp"

namespace cca {

namespace {

void check_common(double t, double r, double gamma) {
    if (t < 0.0) throw std::invalid_argument("negative time");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (!(r > 0.0)) throw std::invalid_argument("r must be positive (g_ell = gamma / r)");
}

// sin(x)/x and sinh(x)/x, accurate near zero.
double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

double sinhc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 + x * x / 6.0;
    return std::sinh(x) / x;
}

double clamp_population(double p) { return std::min(std::max(p, 0.0), 1.0 + 1e-12); }

// c_e(t) e^{gamma t/4} for the pair of modes sharing lambda^2 + (gamma/2) lambda + g^2 = 0;
// sign = -1 for bath_plus_mode, +1 for the Lorentzian bath.
double envelope_amplitude(double t, double r, double gamma, double sign) {
    const double x = gamma * t / 4.0; // (r / Delta) sin(Omega t) = x sinc(Omega t)
    const double d2 = 16.0 - r * r;
    if (d2 >= 0.0) {
        const double omega_t = std::sqrt(d2) * gamma * t / (4.0 * r);
        return std::cos(omega_t) + sign * x * sinc(omega_t);
    }
    const double kappa_t = std::sqrt(-d2) * gamma * t / (4.0 * r);
    return std::cosh(kappa_t) + sign * x * sinhc(kappa_t);
}

} // namespace

const char* to_string(EffectiveModelKind kind) noexcept {
    return kind == EffectiveModelKind::bath_plus_mode ? "bath_plus_mode" : "lorentzian";
}

EffectiveModelKind parse_model_kind(const char* name) {
    if (std::strcmp(name, "bath_plus_mode") == 0) return EffectiveModelKind::bath_plus_mode;
    if (std::strcmp(name, "lorentzian") == 0) return EffectiveModelKind::lorentzian;
    throw std::invalid_argument(std::string("unknown effective model: ") + name);
}

double ModelInputs::delta() const {
    if (!(r < 4.0)) throw std::domain_error("Delta = sqrt(16 - r^2) requires r < 4");
    return std::sqrt(16.0 - r * r);
}

double pe_bath_plus_mode(double t, double r, double gamma) {
    check_common(t, r, gamma);
    const double a = envelope_amplitude(t, r, gamma, -1.0);
    return clamp_population(std::exp(-gamma * t / 2.0) * a * a);
}

double pe_lorentzian(double t, double r, double gamma) {
    check_common(t, r, gamma);
    if (!(r < 4.0)) throw std::invalid_argument("pe_lorentzian requires r < 4");
    const double a = envelope_amplitude(t, r, gamma, +1.0);
    return clamp_population(std::exp(-gamma * t / 2.0) * a * a);
}

double pe_lorentzian_strong_coupling(double t, double r, double gamma) {
    check_common(t, r, gamma);
    if (!(r < 4.0)) throw std::invalid_argument("pe_lorentzian requires r < 4");
    const double delta = std::sqrt(16.0 - r * r);
    const double p = 0.5 * std::exp(-gamma * t / 2.0) * (1.0 + std::cos(delta * gamma * t / (2.0 * r)));
    return clamp_population(p);
}

double nv_bath_plus_mode(double r) {
    if (!(r >= 0.0 && r < kBathPlusModeRMax)) {
        throw std::invalid_argument("nv_bath_plus_mode valid for r in [0, 2 sqrt 2)");
    }
    if (r == 0.0) return std::numeric_limits<double>::infinity();
    const double delta = std::sqrt(16.0 - r * r);
    const double t0 = 4.0 / delta * std::atan(2.0 * delta * r / (r * r - delta * delta));
    return std::exp(-r * t0) / std::expm1(4.0 * std::numbers::pi * r / delta);
}

double nv_lorentzian(double r) {
    if (!(r >= 0.0 && r < kLorentzianRMax)) {
        throw std::invalid_argument("nv_lorentzian valid for r in [0, 2)");
    }
    if (r == 0.0) return std::numeric_limits<double>::infinity();
    const double delta = std::sqrt(16.0 - r * r);
    return 1.0 / std::expm1(4.0 * std::numbers::pi * r / delta);
}

ModelPrediction predict_non_markovianity(EffectiveModelKind kind, double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("r must be nonnegative");
    ModelPrediction out;
    const double r_max =
        kind == EffectiveModelKind::bath_plus_mode ? kBathPlusModeRMax : kLorentzianRMax;
    if (r >= r_max) {
        out.valid = false;
        return out;
    }
    out.n_v = kind == EffectiveModelKind::bath_plus_mode ? nv_bath_plus_mode(r) : nv_lorentzian(r);
    out.n = std::isinf(out.n_v) ? 1.0 : out.n_v / (out.n_v + 1.0);
    return out;
}

double lorentzian_density(double omega, double omega_0, double gamma, double g_ell) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    const double hw = gamma / 2.0;
    const double d = omega - omega_0;
    return g_ell * g_ell / std::numbers::pi * hw / (d * d + hw * hw);
}

namespace {

using Cplx = std::complex<double>;
using Rho = std::array<Cplx, 9>; // row-major 3x3, basis {|e,0>, |g,1>, |g,0>}

constexpr std::size_t kE0 = 0, kG1 = 1, kG0 = 2;

Cplx& at(Rho& m, std::size_t i, std::size_t j) { return m[3 * i + j]; }
Cplx at(const Rho& m, std::size_t i, std::size_t j) { return m[3 * i + j]; }

struct Liouvillian {
    double g;
    double gamma;
    std::size_t damped; // level that decays into |g,0>

    Rho operator()(const Rho& rho) const {
        Rho out{};
        const Cplx i_unit{0.0, 1.0};
        // -i [H, rho], H = g (|e0><g1| + |g1><e0|).
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = 0; b < 3; ++b) {
                Cplx hr{0.0, 0.0};
                Cplx rh{0.0, 0.0};
                if (a == kE0) hr += g * at(rho, kG1, b);
                if (a == kG1) hr += g * at(rho, kE0, b);
                if (b == kG1) rh += g * at(rho, a, kE0);
                if (b == kE0) rh += g * at(rho, a, kG1);
                at(out, a, b) = -i_unit * (hr - rh);
            }
        }
        // gamma (L rho L^+ - {L^+ L, rho}/2), L = |g,0><damped|.
        const std::size_t d = damped;
        at(out, kG0, kG0) += gamma * at(rho, d, d);
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = 0; b < 3; ++b) {
                double w = 0.0;
                if (a == d) w += 0.5;
                if (b == d) w += 0.5;
                if (w != 0.0) at(out, a, b) -= gamma * w * at(rho, a, b);
            }
        }
        return out;
    }
};

Rho axpy(const Rho& x, double h, const Rho& k) {
    Rho out;
    for (std::size_t i = 0; i < 9; ++i) out[i] = x[i] + h * k[i];
    return out;
}

} // namespace

LindbladTrajectory integrate_lindblad(double g_ell, double gamma, double t_max, double dt,
                                      DampedSubsystem damped) {
    if (!(gamma >= 0.0) || !(g_ell >= 0.0)) {
        throw std::invalid_argument("rates must be nonnegative");
    }
    if (!(t_max > 0.0) || !(dt > 0.0)) throw std::invalid_argument("t_max and dt must be positive");
    if (dt * gamma > 0.1 || dt * g_ell > 0.1) {
        throw std::invalid_argument("dt too large for a stable explicit step (dt*rate <= 0.1)");
    }

    const Liouvillian rhs{g_ell, gamma, damped == DampedSubsystem::emitter ? kE0 : kG1};
    Rho rho{};
    at(rho, kE0, kE0) = 1.0;

    const auto n_steps = static_cast<std::size_t>(std::llround(std::ceil(t_max / dt - 1e-9)));
    LindbladTrajectory out;
    out.times.reserve(n_steps + 1);
    out.p_e.reserve(n_steps + 1);
    out.trace.reserve(n_steps + 1);
    auto record = [&](std::size_t step) {
        const double tr = (at(rho, 0, 0) + at(rho, 1, 1) + at(rho, 2, 2)).real();
        out.times.push_back(static_cast<double>(step) * dt);
        out.p_e.push_back(at(rho, kE0, kE0).real());
        out.trace.push_back(tr);
        if (std::abs(tr - 1.0) > 1e-8) {
            throw NumericalError("Lindblad integrator unstable: trace drift " +
                                 std::to_string(tr - 1.0));
        }
    };

    record(0);
    for (std::size_t s = 1; s <= n_steps; ++s) {
        const Rho k1 = rhs(rho);
        const Rho k2 = rhs(axpy(rho, dt / 2.0, k1));
        const Rho k3 = rhs(axpy(rho, dt / 2.0, k2));
        const Rho k4 = rhs(axpy(rho, dt, k3));
        for (std::size_t i = 0; i < 9; ++i) {
            rho[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        record(s);
    }
    return out;
}

LindbladTrajectory integrate_lindblad_bath_plus_mode(double r, double gamma, double t_max,
                                                     double dt) {
    if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    return integrate_lindblad(gamma / r, gamma, t_max, dt, DampedSubsystem::emitter);
}

} // namespace cca
