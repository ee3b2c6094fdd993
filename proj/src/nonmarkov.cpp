#include "cca/nonmarkov.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

#include "cca/errors.hpp"

namespace cca {

namespace {

struct Run {
    std::size_t first;
    std::size_t last;
    double value;
};

void check_grid(std::span<const double> times, std::span<const double> p_e) {
    if (times.size() != p_e.size()) throw std::invalid_argument("times and p_e differ in length");
    if (times.size() < 3) throw std::invalid_argument("trajectory too short (need >= 3 samples)");
}

} // namespace

ExtremaList find_extrema(std::span<const double> times, std::span<const double> p_e,
                         double noise_floor) {
    check_grid(times, p_e);

    // Collapse exact plateaus so a flat top is one extremum.
    std::vector<Run> runs;
    for (std::size_t i = 0; i < p_e.size(); ++i) {
        const double v = p_e[i] * p_e[i];
        if (!runs.empty() && runs.back().value == v) {
            runs.back().last = i;
        } else {
            runs.push_back({i, i, v});
        }
    }

    ExtremaList out;
    const auto emit = [&](const Run& r, bool maximum) {
        if (r.first == 0 || r.last + 1 == p_e.size()) return;
        const std::size_t centre = (r.first + r.last) / 2;
        (maximum ? out.maxima : out.minima).push_back({times[centre], r.value});
    };

    // 0: direction not yet known, +1: rising, -1: falling.
    int direction = 0;
    Run hi = runs.front();
    Run lo = runs.front();
    for (std::size_t j = 1; j < runs.size(); ++j) {
        const Run& r = runs[j];
        if (direction >= 0 && r.value > hi.value) hi = r;
        if (direction <= 0 && r.value < lo.value) lo = r;
        if (direction >= 0 && r.value < hi.value - noise_floor) {
            emit(hi, true);
            direction = -1;
            lo = r;
        } else if (direction <= 0 && r.value > lo.value + noise_floor) {
            emit(lo, false);
            direction = 1;
            hi = r;
        }
    }
    return out;
}

ExtremaList find_extrema(const Trajectory& trajectory, double noise_floor) {
    return find_extrema(trajectory.times, trajectory.p_e, noise_floor);
}

double n_v_extrema_sum(const ExtremaList& extrema) {
    // A minimum after the last maximum starts no backflow segment.
    const double last_max = extrema.maxima.empty() ? -1.0 : extrema.maxima.back().time;
    double sum = 0.0;
    for (const auto& m : extrema.maxima) sum += m.volume;
    for (const auto& m : extrema.minima) {
        if (m.time < last_max) sum -= m.volume;
    }
    return sum;
}

std::pair<double, double> n_v_integral(std::span<const double> p_e) {
    double up = 0.0;
    double down = 0.0;
    for (std::size_t i = 1; i < p_e.size(); ++i) {
        const double delta = p_e[i] * p_e[i] - p_e[i - 1] * p_e[i - 1];
        if (delta > 0.0) {
            up += delta;
        } else {
            down += delta;
        }
    }
    return {up, down};
}

std::pair<double, double> n_v_integral(const Trajectory& trajectory) {
    return n_v_integral(trajectory.p_e);
}

NonMarkovianityResult non_markovianity(std::span<const double> times, std::span<const double> p_e,
                                       double noise_floor) {
    check_grid(times, p_e);
    NonMarkovianityResult out;
    out.method = NonMarkovMethod::integral;
    std::tie(out.n_v, out.n_tilde) = n_v_integral(p_e);

    if (out.n_tilde == 0.0) {
        if (out.n_v > 0.0) throw NumericalError("pathological trajectory");
        out.n = 0.0;
    } else {
        out.n = out.n_v / std::abs(out.n_tilde);
    }

    out.n_v_extrema = n_v_extrema_sum(find_extrema(times, p_e, noise_floor));
    out.n_simplified = out.n_v_extrema / (out.n_v_extrema + 1.0);
    return out;
}

NonMarkovianityResult non_markovianity(const Trajectory& trajectory, double noise_floor) {
    return non_markovianity(trajectory.times, trajectory.p_e, noise_floor);
}

const char* to_string(NonMarkovMethod method) noexcept {
    return method == NonMarkovMethod::integral ? "integral" : "extrema_sum";
}

} // namespace cca
