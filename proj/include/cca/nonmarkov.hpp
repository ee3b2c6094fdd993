// nonmarkov.hpp: accessible-volume non-Markovianity of an excited-state population
//
// Volume of accessible states is p_e^2. N_V accumulates its increases, the
// companion quantity its decreases, and N = N_V / |N~_V| lies in [0, 1].

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "cca/evolution.hpp"

namespace cca {

struct Extremum {
    double time = 0.0;
    double volume = 0.0; // p_e^2 at that time
};

struct ExtremaList {
    std::vector<Extremum> maxima;
    std::vector<Extremum> minima;
};

enum class NonMarkovMethod { integral, extrema_sum };

struct NonMarkovianityResult {
    double n_v = 0.0;     // sum of positive increments of p_e^2
    double n_tilde = 0.0; // sum of negative increments of p_e^2 (<= 0)
    double n = 0.0;       // n_v / |n_tilde|
    NonMarkovMethod method = NonMarkovMethod::integral;

    // Extrema-sum route and the p_e(inf) = 0 simplification, for comparison.
    double n_v_extrema = 0.0;
    double n_simplified = 0.0; // n_v_extrema / (n_v_extrema + 1)
};

inline constexpr double kDefaultNoiseFloor = 1e-9;

// Interior local extrema of p_e^2, alternating by construction. An extremum is
// confirmed once the signal has moved away from it by more than noise_floor
// (hysteresis), so the result does not depend on the sampling step. Plateaus
// report their midpoint; candidates touching either endpoint are dropped.
ExtremaList find_extrema(std::span<const double> times, std::span<const double> p_e,
                         double noise_floor = kDefaultNoiseFloor);
ExtremaList find_extrema(const Trajectory& trajectory, double noise_floor = kDefaultNoiseFloor);

// Sum of maxima minus sum of minima; minima after the last maximum are ignored,
// so the result is nonnegative for an alternating list.
double n_v_extrema_sum(const ExtremaList& extrema);

// Telescoping discrete integral; returns (n_v, n_tilde).
std::pair<double, double> n_v_integral(std::span<const double> p_e);
std::pair<double, double> n_v_integral(const Trajectory& trajectory);

// Throws NumericalError("pathological trajectory") when the population only rises.
NonMarkovianityResult non_markovianity(std::span<const double> times, std::span<const double> p_e,
                                       double noise_floor = kDefaultNoiseFloor);
NonMarkovianityResult non_markovianity(const Trajectory& trajectory,
                                       double noise_floor = kDefaultNoiseFloor);

const char* to_string(NonMarkovMethod method) noexcept;

} // namespace cca
