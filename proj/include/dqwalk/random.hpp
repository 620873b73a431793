#pragma once

#include <random>

#include "dqwalk/quantum.hpp"

namespace dqwalk {

using Rng = std::mt19937_64;

/// Entries i.i.d. standard complex Gaussian.
inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

inline ComplexMatrix random_matrix(Eigen::Index n, Rng& rng) { return random_matrix(n, n, rng); }

inline ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng) {
    const ComplexMatrix g = random_matrix(n, rng);
    return (g + g.adjoint()) / 2.0;
}

/// Haar-distributed unitary from the phase-corrected QR of a Ginibre matrix.
inline ComplexMatrix random_unitary(Eigen::Index n, Rng& rng) {
    const ComplexMatrix g = random_matrix(n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex d = r(k, k);
        if (std::abs(d) > 0.0) {
            q.col(k) *= d / std::abs(d);
        }
    }
    return q;
}

/// Full-rank mixed state G G^dagger / tr(G G^dagger).
inline DensityMatrix random_density(Eigen::Index n, Rng& rng) {
    const ComplexMatrix g = random_matrix(n, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix::from_numerical(rho);
}

/// Pure state |psi><psi| for a random unit vector.
inline DensityMatrix random_pure_density(Eigen::Index n, Rng& rng) {
    ComplexVector psi = random_matrix(n, 1, rng);
    psi /= psi.norm();
    return DensityMatrix::from_numerical(psi * psi.adjoint());
}

} // namespace dqwalk
