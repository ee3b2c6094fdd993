#include "cca/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cca {

void SystemConfig::validate() const {
    if (n_cavities < 1 || n_cavities % 2 == 0) {
        throw std::invalid_argument("n_cavities must be odd, got " + std::to_string(n_cavities));
    }
    if (!(coupling >= 0.0)) {
        throw std::invalid_argument("coupling must be nonnegative");
    }
}

std::vector<double> TridiagonalOperator::apply(std::span<const double> v) const {
    const std::size_t n = diag.size();
    if (v.size() != n) {
        throw std::invalid_argument("dimension mismatch in TridiagonalOperator::apply");
    }
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = diag[i] * v[i];
        if (i > 0) acc += off[i - 1] * v[i - 1];
        if (i + 1 < n) acc += off[i] * v[i + 1];
        w[i] = acc;
    }
    return w;
}

SingleExcitationHamiltonian::SingleExcitationHamiltonian(std::vector<double> diagonal,
                                                         double hopping, double atom_bond,
                                                         std::size_t atom_site)
    : diagonal_(std::move(diagonal)), hopping_(hopping), atom_bond_(atom_bond),
      atom_site_(atom_site) {
    if (diagonal_.size() < 2) {
        throw std::invalid_argument("Hamiltonian needs at least one cavity");
    }
    if (atom_site_ < 1 || atom_site_ > n_cavities()) {
        throw std::invalid_argument("atom site outside the chain");
    }
}

void SingleExcitationHamiltonian::apply(std::span<const cplx> v, std::span<cplx> w) const {
    const std::size_t dim = diagonal_.size();
    if (v.size() != dim || w.size() != dim) {
        throw std::invalid_argument("dimension mismatch in SingleExcitationHamiltonian::apply");
    }
    const double* d = diagonal_.data();
    const double J = hopping_;
    const std::size_t last = dim - 1;

    w[0] = d[0] * v[0] + atom_bond_ * v[atom_site_];
    if (last == 1) {
        w[1] = d[1] * v[1];
    } else {
        w[1] = d[1] * v[1] + J * v[2];
        for (std::size_t n = 2; n < last; ++n) {
            w[n] = d[n] * v[n] + J * (v[n - 1] + v[n + 1]);
        }
        w[last] = d[last] * v[last] + J * v[last - 1];
    }
    w[atom_site_] += atom_bond_ * v[0];
}

std::vector<cplx> SingleExcitationHamiltonian::apply(std::span<const cplx> v) const {
    std::vector<cplx> w(v.size());
    apply(v, w);
    return w;
}

std::vector<double> SingleExcitationHamiltonian::dense() const {
    const std::size_t dim = diagonal_.size();
    std::vector<double> m(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) m[i * dim + i] = diagonal_[i];
    for (std::size_t n = 1; n + 1 < dim; ++n) {
        m[n * dim + n + 1] = hopping_;
        m[(n + 1) * dim + n] = hopping_;
    }
    m[atom_site_] = atom_bond_;
    m[atom_site_ * dim] = atom_bond_;
    return m;
}

namespace {

void check_sizes(const SystemConfig& config, std::size_t n) {
    config.validate();
    if (n != config.n_cavities) {
        throw std::invalid_argument("series length " + std::to_string(n) +
                                    " does not match n_cavities " +
                                    std::to_string(config.n_cavities));
    }
}

} // namespace

SingleExcitationHamiltonian build_full_hamiltonian(const SystemConfig& config,
                                                   std::span<const double> onsite) {
    check_sizes(config, onsite.size());
    std::vector<double> diagonal(onsite.size() + 1);
    diagonal[0] = config.atom_frequency;
    std::copy(onsite.begin(), onsite.end(), diagonal.begin() + 1);
    return {std::move(diagonal), config.hopping, config.coupling, config.atom_site()};
}

SingleExcitationHamiltonian build_full_hamiltonian(const SystemConfig& config,
                                                   const DisorderSeries& series) {
    if (series.n_sites != series.values.size()) {
        throw std::invalid_argument("inconsistent DisorderSeries");
    }
    return build_full_hamiltonian(config, std::span<const double>(series.values));
}

TridiagonalOperator build_free_field(const SystemConfig& config, std::span<const double> onsite) {
    check_sizes(config, onsite.size());
    TridiagonalOperator op;
    op.diag.assign(onsite.begin(), onsite.end());
    op.off.assign(onsite.size() - 1, config.hopping);
    return op;
}

TridiagonalOperator build_free_field(const SystemConfig& config, const DisorderSeries& series) {
    return build_free_field(config, std::span<const double>(series.values));
}

} // namespace cca
