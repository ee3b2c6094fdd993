#include "cca/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cca {

namespace {

void check_pair(std::span<const double> omegas, std::span<const double> couplings) {
    if (omegas.size() != couplings.size()) {
        throw std::invalid_argument("omegas and couplings differ in length");
    }
}

void check_site(std::size_t n, std::size_t c) {
    if (c < 1 || c > n) {
        throw std::invalid_argument("site " + std::to_string(c) + " outside 1.." +
                                    std::to_string(n));
    }
}

EffectiveParams assemble(std::span<const double> omegas, std::span<const double> couplings,
                         double g, double omega_a, std::size_t ell, double xi) {
    EffectiveParams out;
    out.ell = ell;
    out.omega_ell = omegas[ell];
    out.xi = xi;
    out.g_ell = g / std::sqrt(xi);
    out.window_weight = decay_rate(omegas, couplings, omega_a, kDefaultHalfWindow, ell);
    out.gamma = kDissipationPrefactor * out.window_weight;
    out.r = out.g_ell > 0.0 ? out.gamma / out.g_ell : std::numeric_limits<double>::infinity();
    return out;
}

} // namespace

std::vector<double> mode_couplings(const EigenDecomposition& decomp, double g, std::size_t c) {
    check_site(decomp.size(), c);
    std::vector<double> out(decomp.size());
    for (std::size_t k = 0; k < decomp.size(); ++k) out[k] = g * decomp.eigenvectors[k][c - 1];
    return out;
}

SpectralDensity spectral_density(std::span<const double> omegas, std::span<const double> couplings,
                                 double bin_width) {
    check_pair(omegas, couplings);
    if (!(bin_width > 0.0)) throw std::invalid_argument("bin_width must be positive");
    if (omegas.empty()) throw std::invalid_argument("empty spectrum");

    const auto [lo_it, hi_it] = std::minmax_element(omegas.begin(), omegas.end());
    const double lo = *lo_it - bin_width;
    const double hi = *hi_it + bin_width;
    const auto n_bins = static_cast<std::size_t>(std::ceil((hi - lo) / bin_width));

    SpectralDensity out;
    out.bin_width = bin_width;
    out.bin_centers.resize(n_bins);
    out.values.assign(n_bins, 0.0);
    for (std::size_t b = 0; b < n_bins; ++b) {
        out.bin_centers[b] = lo + (static_cast<double>(b) + 0.5) * bin_width;
    }
    for (std::size_t k = 0; k < omegas.size(); ++k) {
        auto b = static_cast<std::size_t>(std::floor((omegas[k] - lo) / bin_width));
        b = std::min(b, n_bins - 1);
        out.values[b] += couplings[k] * couplings[k];
    }
    for (double& v : out.values) v /= bin_width;
    return out;
}

SpectralDensity spectral_density(const EigenDecomposition& decomp, double g, std::size_t c,
                                 double bin_width) {
    return spectral_density(decomp.eigenvalues, mode_couplings(decomp, g, c), bin_width);
}

double decay_rate(std::span<const double> omegas, std::span<const double> couplings,
                  double omega_a, double half_window, std::optional<std::size_t> exclude) {
    check_pair(omegas, couplings);
    if (!(half_window > 0.0)) throw std::invalid_argument("half_window must be positive");
    double sum = 0.0;
    for (std::size_t k = 0; k < omegas.size(); ++k) {
        if (exclude && *exclude == k) continue;
        if (std::abs(omegas[k] - omega_a) <= half_window) sum += couplings[k] * couplings[k];
    }
    return sum / (2.0 * half_window);
}

double decay_rate(const EigenDecomposition& decomp, double g, std::size_t c, double omega_a,
                  double half_window, std::optional<std::size_t> exclude) {
    return decay_rate(decomp.eigenvalues, mode_couplings(decomp, g, c), omega_a, half_window,
                      exclude);
}

double participation_ratio(std::span<const double> eigenvector) {
    if (eigenvector.empty()) throw std::invalid_argument("empty eigenvector");
    double n2 = 0.0;
    double n4 = 0.0;
    for (double v : eigenvector) {
        const double v2 = v * v;
        n2 += v2;
        n4 += v2 * v2;
    }
    if (std::abs(n2 - 1.0) > 1e-10) {
        throw std::invalid_argument("participation_ratio needs a normalized vector");
    }
    return 1.0 / n4;
}

std::size_t select_mode_ell(std::span<const double> omegas, std::span<const double> couplings,
                            double omega_a) {
    check_pair(omegas, couplings);
    if (omegas.empty()) throw std::invalid_argument("empty spectrum");

    constexpr double kTieTolerance = 1e-12;
    const double inf = std::numeric_limits<double>::infinity();
    // Round-off level couplings and detunings count as exact zeros, otherwise a
    // node of an eigenvector at c can win through a 1e-17 / 1e-16 quotient.
    double g_scale = 0.0, w_scale = std::abs(omega_a);
    for (std::size_t k = 0; k < omegas.size(); ++k) {
        g_scale = std::max(g_scale, std::abs(couplings[k]));
        w_scale = std::max(w_scale, std::abs(omegas[k]));
    }
    const double g_zero = kTieTolerance * g_scale;
    const double w_zero = kTieTolerance * std::max(w_scale, 1.0);
    auto factor = [&](std::size_t k) {
        const double num = std::abs(couplings[k]);
        const double den = std::abs(omegas[k] - omega_a);
        if (num <= g_zero) return 0.0;
        if (den <= w_zero) return inf;
        return num / den;
    };

    std::size_t best = 0;
    double best_factor = factor(0);
    for (std::size_t k = 1; k < omegas.size(); ++k) {
        const double f = factor(k);
        bool better;
        if (std::isinf(f) || std::isinf(best_factor)) {
            better = std::isinf(f) && !std::isinf(best_factor);
        } else if (std::abs(f - best_factor) <= kTieTolerance * std::max(f, best_factor)) {
            // Tie: prefer the smaller detuning; on a further tie keep the lower index.
            const double d_new = std::abs(omegas[k] - omega_a);
            const double d_old = std::abs(omegas[best] - omega_a);
            better = d_new < d_old && (d_old - d_new) > kTieTolerance * std::max(d_old, 1.0);
        } else {
            better = f > best_factor;
        }
        if (better) {
            best = k;
            best_factor = f;
        }
    }
    return best;
}

std::size_t select_mode_ell(const EigenDecomposition& decomp, double g, std::size_t c,
                            double omega_a) {
    return select_mode_ell(decomp.eigenvalues, mode_couplings(decomp, g, c), omega_a);
}

EffectiveParams effective_params(const EigenDecomposition& decomp, double g, std::size_t c,
                                 double omega_a) {
    const auto couplings = mode_couplings(decomp, g, c);
    const std::size_t ell = select_mode_ell(decomp.eigenvalues, couplings, omega_a);
    const double xi = participation_ratio(decomp.eigenvectors[ell]);
    return assemble(decomp.eigenvalues, couplings, g, omega_a, ell, xi);
}

EffectiveParams effective_params(const TridiagonalSpectrum& spectrum, double g, std::size_t c,
                                 double omega_a) {
    check_site(spectrum.size(), c);
    auto couplings = spectrum.site_amplitudes(c - 1);
    for (double& v : couplings) v *= g;
    const auto& omegas = spectrum.eigenvalues();
    const std::size_t ell = select_mode_ell(omegas, couplings, omega_a);
    const double xi = participation_ratio(spectrum.eigenvector(ell));
    return assemble(omegas, couplings, g, omega_a, ell, xi);
}

} // namespace cca
