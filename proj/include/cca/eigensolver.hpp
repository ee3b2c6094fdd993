// eigensolver.hpp: symmetric tridiagonal eigenproblem by implicit-shift QL
//
// The QL sweep is expressed as a sequence of plane rotations acting on
// adjacent columns of the eigenvector matrix. Keeping that sequence lets the
// caller recover single rows (amplitudes on one site for every mode) or single
// eigenvectors in O(N^2) without forming the full N x N matrix.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cca {

struct EigenDecomposition {
    std::vector<double> eigenvalues;               // ascending
    std::vector<std::vector<double>> eigenvectors; // eigenvectors[k][n] = v_{k,n}

    std::size_t size() const noexcept { return eigenvalues.size(); }
};

// Maximum QL iterations spent on a single eigenvalue before giving up.
inline constexpr int kMaxQlIterations = 60;

class TridiagonalSpectrum {
public:
    // Throws ConvergenceError carrying the index of the stuck eigenvalue.
    static TridiagonalSpectrum compute(std::span<const double> diag, std::span<const double> off);

    std::size_t size() const noexcept { return eigenvalues_.size(); }
    const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }

    // v_{k,site} for every k (ascending eigenvalue order); site is 0-based.
    std::vector<double> site_amplitudes(std::size_t site) const;

    // Eigenvector of the k-th smallest eigenvalue.
    std::vector<double> eigenvector(std::size_t k) const;

    EigenDecomposition decomposition() const;

private:
    struct Rotation {
        std::uint32_t col; // rotates columns col and col + 1
        double c;
        double s;
    };

    std::vector<double> eigenvalues_;
    std::vector<std::size_t> order_; // order_[k] = unsorted slot of k-th eigenvalue
    std::vector<Rotation> rotations_;
};

// Full spectrum and orthonormal eigenvectors.
EigenDecomposition diagonalize_tridiagonal(std::span<const double> diag,
                                           std::span<const double> off);

// Eigenvalues only; no rotation bookkeeping.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                            std::span<const double> off);

} // namespace cca
