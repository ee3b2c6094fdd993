// disorder.hpp: long-range correlated on-site frequencies with a k^-alpha spectrum

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cca/rng.hpp"

namespace cca {

// Normalized on-site frequency series (zero mean, unit population variance).
// The modulation wavelength scale is the chain length (L = N).
struct DisorderSeries {
    std::vector<double> values;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    std::size_t n_sites = 0;
};

inline constexpr const char* kWavelengthConvention = "L=N";

// eps_n = sum_{k=1}^{(N+1)/2} k^{-alpha/2} cos(2 pi n k / N + phi_k), n = 1..N.
// Returned vector index i holds site n = i + 1.
std::vector<double> generate_raw_series(std::size_t n_sites, double alpha,
                                        std::span<const double> phases);

// Affine map to zero mean and unit population variance.
// Throws std::invalid_argument("degenerate series") for constant input.
std::vector<double> normalize_series(std::span<const double> raw);

// Draws (N+1)/2 phases uniform on [0, 2pi) from the stream, then generates
// and normalizes. The stream is consumed from its current position.
DisorderSeries sample_series(std::size_t n_sites, double alpha, RngStream& stream);

// Lag-k sample autocorrelation (population convention).
double autocorrelation(std::span<const double> series, std::size_t lag);

} // namespace cca
