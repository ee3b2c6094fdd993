// spectral.hpp: environment diagnostics from the free-field normal modes
//
// All quantities are built from the mode frequencies omega_k and the atom
// couplings g_k = g v_{k,c}. Functions taking (omegas, couplings) are the
// working routines; the EigenDecomposition overloads are conveniences.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cca/eigensolver.hpp"

namespace cca {

struct SpectralDensity {
    std::vector<double> bin_centers;
    std::vector<double> values; // G(omega), sum(values) * bin_width == sum g_k^2
    double bin_width = 0.1;
};

struct EffectiveParams {
    double gamma = 0.0;          // pi * window_weight
    double window_weight = 0.0;  // binned sum_{k != ell} g_k^2 delta(omega_k - omega_a)
    std::size_t ell = 0;
    double omega_ell = 0.0;
    double xi = 1.0;
    double g_ell = 0.0;
    double r = 0.0;
};

inline constexpr double kDefaultBinWidth = 0.1;
inline constexpr double kDefaultHalfWindow = 0.05;

// gamma = pi sum_{k != ell} g_k^2 delta(omega_k - omega_a); the delta sum is
// estimated by decay_rate's window average.
inline constexpr double kDissipationPrefactor = 3.14159265358979323846;

// g_k = g v_{k,c}; c is the 1-based cavity index.
std::vector<double> mode_couplings(const EigenDecomposition& decomp, double g, std::size_t c);

// Uniform bins on [min omega - w, max omega + w]; bin value = sum g_k^2 / w.
SpectralDensity spectral_density(std::span<const double> omegas, std::span<const double> couplings,
                                 double bin_width = kDefaultBinWidth);
SpectralDensity spectral_density(const EigenDecomposition& decomp, double g, std::size_t c,
                                 double bin_width = kDefaultBinWidth);

// Window estimate of sum_k g_k^2 delta(omega_k - omega_a):
// sum_{|omega_k - omega_a| <= h, k != exclude} g_k^2 / (2h).
// An empty window yields 0.
double decay_rate(std::span<const double> omegas, std::span<const double> couplings,
                  double omega_a, double half_window = kDefaultHalfWindow,
                  std::optional<std::size_t> exclude = std::nullopt);
double decay_rate(const EigenDecomposition& decomp, double g, std::size_t c, double omega_a,
                  double half_window = kDefaultHalfWindow,
                  std::optional<std::size_t> exclude = std::nullopt);

// xi = 1 / sum_n v_n^4. Throws std::invalid_argument for vectors whose norm
// deviates from 1 by more than 1e-10.
double participation_ratio(std::span<const double> eigenvector);

// argmax_k |g_k| / |omega_k - omega_a|.
// |g_k| below 1e-12 max|g| counts as zero coupling; a coupled mode with
// detuning below 1e-12 max(1, max|omega|) is an exact resonance (infinite
// factor). Factors equal to a relative 1e-12 are ties, broken by smaller
// detuning, then lower k.
std::size_t select_mode_ell(std::span<const double> omegas, std::span<const double> couplings,
                            double omega_a);
std::size_t select_mode_ell(const EigenDecomposition& decomp, double g, std::size_t c,
                            double omega_a);

// Mode ell, its participation ratio, g_ell = g / sqrt(xi),
// gamma = kDissipationPrefactor * decay_rate(..., exclude = ell) and r = gamma / g_ell.
EffectiveParams effective_params(const EigenDecomposition& decomp, double g, std::size_t c,
                                 double omega_a);
EffectiveParams effective_params(const TridiagonalSpectrum& spectrum, double g, std::size_t c,
                                 double omega_a);

} // namespace cca
