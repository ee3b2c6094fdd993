// effective.hpp: two closed-form dissipative models of the emitter
//
// bath_plus_mode: emitter resonantly coupled (g_ell) to one auxiliary mode and
//   damped into a flat bath at rate gamma.
// lorentzian: emitter resonant with the peak of a Lorentzian bath of width
//   gamma and weight g_ell^2.
// Both depend on r = gamma / g_ell and share Delta = sqrt(16 - r^2).

#pragma once

#include <vector>

namespace cca {

enum class EffectiveModelKind { bath_plus_mode, lorentzian };

const char* to_string(EffectiveModelKind kind) noexcept;
EffectiveModelKind parse_model_kind(const char* name);

// Upper ends of the closed-form N_V validity ranges.
inline constexpr double kBathPlusModeRMax = 2.8284271247461900976; // 2 sqrt(2)
inline constexpr double kLorentzianRMax = 2.0;

struct ModelInputs {
    double r = 1.0;
    double gamma = 0.1;

    double g_ell() const noexcept { return gamma / r; }
    // sqrt(16 - r^2); only meaningful for r < 4.
    double delta() const;
};

// e^{-gamma t/2} [cos(Omega t) - (r/Delta) sin(Omega t)]^2, Omega = Delta gamma / (4 r),
// continued to cosh/sinh for r > 4 and to e^{-gamma t/2}(1 - gamma t/4)^2 at r = 4.
double pe_bath_plus_mode(double t, double r, double gamma);

// Resonant Lorentzian bath:
// e^{-gamma t/2} [cos(Omega t) + (r/Delta) sin(Omega t)]^2, valid for 0 < r < 4.
double pe_lorentzian(double t, double r, double gamma);

// Strong-coupling form of the Lorentzian solution, dropping the (r/Delta) sine:
// (1/2) e^{-gamma t/2} [1 + cos(2 Omega t)].
double pe_lorentzian_strong_coupling(double t, double r, double gamma);

// Closed-form N_V in units g_ell = 1. t0 uses the principal arctan branch.
double nv_bath_plus_mode(double r); // 0 <= r < 2 sqrt(2)
double nv_lorentzian(double r);     // 0 <= r < 2

// N = N_V / (N_V + 1), with the out-of-range convention N = 0 and valid = false.
struct ModelPrediction {
    double n_v = 0.0;
    double n = 0.0;
    bool valid = true;
};
ModelPrediction predict_non_markovianity(EffectiveModelKind kind, double r);

double lorentzian_density(double omega, double omega_0, double gamma, double g_ell);

struct LindbladTrajectory {
    std::vector<double> times;
    std::vector<double> p_e;
    std::vector<double> trace;
};

enum class DampedSubsystem { emitter, mode };

// RK4 integration of the {|e,0>, |g,1>, |g,0>} density matrix with
// H = g_ell (|e,0><g,1| + h.c.) at resonance and a single jump operator at rate
// gamma: sigma_- on the emitter, or the mode annihilator (pseudomode picture
// of the Lorentzian bath). Requires dt * gamma <= 0.1 and dt * g_ell <= 0.1.
// Throws NumericalError if the trace drifts by more than 1e-8.
LindbladTrajectory integrate_lindblad(double g_ell, double gamma, double t_max, double dt,
                                      DampedSubsystem damped = DampedSubsystem::emitter);

// Convenience wrapper in terms of r: g_ell = gamma / r.
LindbladTrajectory integrate_lindblad_bath_plus_mode(double r, double gamma, double t_max,
                                                     double dt);

} // namespace cca
