#include "cca/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cca {

std::vector<double> generate_raw_series(std::size_t n_sites, double alpha,
                                        std::span<const double> phases) {
    if (n_sites < 3 || n_sites % 2 == 0) {
        throw std::invalid_argument("n_sites must be odd and >= 3, got " + std::to_string(n_sites));
    }
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("alpha must be a finite nonnegative real");
    }
    const std::size_t n_modes = (n_sites + 1) / 2;
    if (phases.size() != n_modes) {
        throw std::invalid_argument("expected " + std::to_string(n_modes) + " phases, got " +
                                    std::to_string(phases.size()));
    }

    std::vector<double> amplitude(n_modes);
    for (std::size_t k = 1; k <= n_modes; ++k) {
        amplitude[k - 1] = std::pow(static_cast<double>(k), -0.5 * alpha);
    }

    // Reduce n*k modulo N before scaling so the phase argument stays exact.
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n_sites);
    std::vector<double> eps(n_sites, 0.0);
    for (std::size_t n = 1; n <= n_sites; ++n) {
        double sum = 0.0;
        for (std::size_t k = 1; k <= n_modes; ++k) {
            const auto turn = (n * k) % n_sites;
            sum += amplitude[k - 1] * std::cos(step * static_cast<double>(turn) + phases[k - 1]);
        }
        eps[n - 1] = sum;
    }
    return eps;
}

std::vector<double> normalize_series(std::span<const double> raw) {
    if (raw.size() < 2) {
        throw std::invalid_argument("normalize_series needs at least two samples");
    }
    const double n = static_cast<double>(raw.size());
    double mean = 0.0;
    for (double x : raw) mean += x;
    mean /= n;

    double var = 0.0;
    for (double x : raw) var += (x - mean) * (x - mean);
    var /= n;

    const double scale = std::max(std::abs(mean), 1.0);
    if (!(var > 1e-28 * scale * scale)) {
        throw std::invalid_argument("degenerate series");
    }

    const double inv_std = 1.0 / std::sqrt(var);
    std::vector<double> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = (raw[i] - mean) * inv_std;

    // One corrective pass pulls the residual mean/variance down to roundoff.
    double m2 = 0.0;
    for (double x : out) m2 += x;
    m2 /= n;
    double v2 = 0.0;
    for (double& x : out) {
        x -= m2;
        v2 += x * x;
    }
    v2 /= n;
    const double fix = 1.0 / std::sqrt(v2);
    for (double& x : out) x *= fix;
    return out;
}

DisorderSeries sample_series(std::size_t n_sites, double alpha, RngStream& stream) {
    if (n_sites < 3 || n_sites % 2 == 0) {
        throw std::invalid_argument("n_sites must be odd and >= 3, got " + std::to_string(n_sites));
    }
    const std::uint64_t seed = stream.seed();
    std::vector<double> phases((n_sites + 1) / 2);
    for (double& phi : phases) phi = 2.0 * std::numbers::pi * stream.next_uniform();

    DisorderSeries out;
    out.values = normalize_series(generate_raw_series(n_sites, alpha, phases));
    out.alpha = alpha;
    out.seed = seed;
    out.n_sites = n_sites;
    return out;
}

double autocorrelation(std::span<const double> series, std::size_t lag) {
    if (series.size() <= lag + 1) {
        throw std::invalid_argument("series too short for requested lag");
    }
    const double n = static_cast<double>(series.size());
    double mean = 0.0;
    for (double x : series) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : series) var += (x - mean) * (x - mean);
    double cov = 0.0;
    for (std::size_t i = 0; i + lag < series.size(); ++i) {
        cov += (series[i] - mean) * (series[i + lag] - mean);
    }
    return cov / var;
}

} // namespace cca
