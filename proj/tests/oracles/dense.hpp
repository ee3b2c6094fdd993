// Dense linear-algebra oracles built on Eigen. Test-only.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cca/model.hpp"

namespace oracle {

inline Eigen::MatrixXd dense_matrix(const cca::SingleExcitationHamiltonian& h) {
    const auto n = static_cast<Eigen::Index>(h.dimension());
    const auto flat = h.dense();
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = flat[static_cast<std::size_t>(i * n + j)];
    return m;
}

// exp(-i H t) v by full diagonalization.
inline std::vector<std::complex<double>> propagate_exact(const Eigen::MatrixXd& h,
                                                         const std::vector<std::complex<double>>& v,
                                                         double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::MatrixXcd u = es.eigenvectors().cast<std::complex<double>>();
    Eigen::VectorXcd x(static_cast<Eigen::Index>(v.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = v[static_cast<std::size_t>(i)];
    Eigen::VectorXcd c = u.adjoint() * x;
    for (Eigen::Index k = 0; k < c.size(); ++k) {
        c(k) *= std::exp(std::complex<double>(0.0, -es.eigenvalues()(k) * t));
    }
    const Eigen::VectorXcd y = u * c;
    return {y.data(), y.data() + y.size()};
}

} // namespace oracle
