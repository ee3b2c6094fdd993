// model.hpp: single-excitation Hamiltonian of an emitter in a coupled-cavity array
//
// Basis ordering is fixed: index 0 is the excited atom with the field in vacuum,
// index n (1..N) is one photon in cavity n. Open boundary conditions.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "cca/disorder.hpp"

namespace cca {

using cplx = std::complex<double>;

inline constexpr const char* kBasisOrdering = "atom,cavity_1..cavity_N";

struct SystemConfig {
    std::size_t n_cavities = 1201;
    double hopping = 1.0;        // J, the energy unit
    double coupling = 0.1;       // g
    double atom_frequency = 0.0; // omega_a

    // Central cavity c = (N+1)/2, 1-based.
    std::size_t atom_site() const noexcept { return (n_cavities + 1) / 2; }

    // Throws std::invalid_argument on even N, N < 1 or g < 0.
    void validate() const;
};

// Symmetric tridiagonal matrix stored as diagonal + off-diagonal.
struct TridiagonalOperator {
    std::vector<double> diag;
    std::vector<double> off; // off[i] couples i and i+1

    std::size_t dimension() const noexcept { return diag.size(); }
    std::vector<double> apply(std::span<const double> v) const;
};

// Chain with one extra atom bond, stored structurally (never densified).
class SingleExcitationHamiltonian {
public:
    SingleExcitationHamiltonian(std::vector<double> diagonal, double hopping, double atom_bond,
                                std::size_t atom_site);

    std::size_t dimension() const noexcept { return diagonal_.size(); }
    std::size_t n_cavities() const noexcept { return diagonal_.size() - 1; }
    std::span<const double> diagonal() const noexcept { return diagonal_; }
    double hopping() const noexcept { return hopping_; }
    double atom_bond() const noexcept { return atom_bond_; }
    std::size_t atom_site() const noexcept { return atom_site_; }

    // w = H v. O(N), no allocation. w must not alias v.
    void apply(std::span<const cplx> v, std::span<cplx> w) const;
    std::vector<cplx> apply(std::span<const cplx> v) const;

    // Row-major dense copy; intended for tests and small dumps only.
    std::vector<double> dense() const;

private:
    std::vector<double> diagonal_;
    double hopping_;
    double atom_bond_;
    std::size_t atom_site_;
};

SingleExcitationHamiltonian build_full_hamiltonian(const SystemConfig& config,
                                                   const DisorderSeries& series);

// Overload for a raw on-site vector (e.g. the homogeneous chain).
SingleExcitationHamiltonian build_full_hamiltonian(const SystemConfig& config,
                                                   std::span<const double> onsite);

TridiagonalOperator build_free_field(const SystemConfig& config, const DisorderSeries& series);
TridiagonalOperator build_free_field(const SystemConfig& config, std::span<const double> onsite);

} // namespace cca
