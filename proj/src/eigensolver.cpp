#include "cca/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cca/errors.hpp"

namespace cca {

namespace {

void check_input(std::span<const double> diag, std::span<const double> off) {
    if (diag.empty()) throw std::invalid_argument("empty tridiagonal matrix");
    if (off.size() + 1 != diag.size()) {
        throw std::invalid_argument("off-diagonal must have N-1 entries");
    }
}

// Implicit-shift QL (tql2 lineage). d holds the diagonal on entry and the
// unsorted eigenvalues on exit. on_rotation(i, c, s) is invoked for every
// rotation of columns (i, i+1) in application order.
template <typename OnRotation>
void ql_implicit(std::vector<double>& d, std::vector<double>& e, OnRotation&& on_rotation) {
    const std::size_t n = d.size();
    const double eps = std::numeric_limits<double>::epsilon();
    e.push_back(0.0);

    double shift_total = 0.0;
    double tst1 = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t m = l;
        while (m < n && std::abs(e[m]) > eps * tst1) ++m;

        if (m > l) {
            int iter = 0;
            do {
                if (++iter > kMaxQlIterations) {
                    throw ConvergenceError("QL iteration did not converge", l);
                }
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
                shift_total += h;

                p = d[m];
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (std::size_t ii = m; ii-- > l;) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[ii];
                    h = c * p;
                    r = std::hypot(p, e[ii]);
                    e[ii + 1] = s * r;
                    s = e[ii] / r;
                    c = p / r;
                    p = c * d[ii] - s * g;
                    d[ii + 1] = h + s * (c * g + s * d[ii]);
                    on_rotation(ii, c, s);
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += shift_total;
        e[l] = 0.0;
    }
    e.pop_back();
}

std::vector<std::size_t> ascending_order(const std::vector<double>& values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    return idx;
}

} // namespace

TridiagonalSpectrum TridiagonalSpectrum::compute(std::span<const double> diag,
                                                 std::span<const double> off) {
    check_input(diag, off);
    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(off.begin(), off.end());

    TridiagonalSpectrum out;
    out.rotations_.reserve(8 * d.size());
    ql_implicit(d, e, [&](std::size_t i, double c, double s) {
        out.rotations_.push_back({static_cast<std::uint32_t>(i), c, s});
    });
    out.order_ = ascending_order(d);
    out.eigenvalues_.resize(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) out.eigenvalues_[k] = d[out.order_[k]];
    return out;
}

std::vector<double> TridiagonalSpectrum::site_amplitudes(std::size_t site) const {
    const std::size_t n = eigenvalues_.size();
    if (site >= n) throw std::out_of_range("site index out of range");
    // Row `site` of Z = R_1 R_2 ... R_m, built left to right.
    std::vector<double> row(n, 0.0);
    row[site] = 1.0;
    for (const Rotation& rot : rotations_) {
        const double a = row[rot.col];
        const double b = row[rot.col + 1];
        row[rot.col] = rot.c * a - rot.s * b;
        row[rot.col + 1] = rot.s * a + rot.c * b;
    }
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = row[order_[k]];
    return out;
}

std::vector<double> TridiagonalSpectrum::eigenvector(std::size_t k) const {
    const std::size_t n = eigenvalues_.size();
    if (k >= n) throw std::out_of_range("mode index out of range");
    // Column of Z = R_1 (R_2 (... (R_m e_j))), applied right to left.
    std::vector<double> col(n, 0.0);
    col[order_[k]] = 1.0;
    for (auto it = rotations_.rbegin(); it != rotations_.rend(); ++it) {
        const double a = col[it->col];
        const double b = col[it->col + 1];
        col[it->col] = it->c * a + it->s * b;
        col[it->col + 1] = -it->s * a + it->c * b;
    }
    return col;
}

EigenDecomposition TridiagonalSpectrum::decomposition() const {
    const std::size_t n = eigenvalues_.size();
    // Columns of Z stored contiguously so each rotation touches two arrays.
    std::vector<std::vector<double>> z(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) z[i][i] = 1.0;
    for (const Rotation& rot : rotations_) {
        auto& zi = z[rot.col];
        auto& zj = z[rot.col + 1];
        for (std::size_t row = 0; row < n; ++row) {
            const double h = zj[row];
            zj[row] = rot.s * zi[row] + rot.c * h;
            zi[row] = rot.c * zi[row] - rot.s * h;
        }
    }
    EigenDecomposition out;
    out.eigenvalues = eigenvalues_;
    out.eigenvectors.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.eigenvectors[k] = std::move(z[order_[k]]);
    return out;
}

EigenDecomposition diagonalize_tridiagonal(std::span<const double> diag,
                                           std::span<const double> off) {
    return TridiagonalSpectrum::compute(diag, off).decomposition();
}

std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                            std::span<const double> off) {
    check_input(diag, off);
    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(off.begin(), off.end());
    ql_implicit(d, e, [](std::size_t, double, double) {});
    std::sort(d.begin(), d.end());
    return d;
}

} // namespace cca
