#pragma once

// Dense complex linear algebra on top of Eigen. Free functions accept any
// Eigen expression; results are plain dynamic matrices of the promoted scalar.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dqwalk/errors.hpp"

namespace dqwalk {

template <typename Real = double>
using Matrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real = double>
using Vector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using ComplexMatrix = Matrix<double>;
using ComplexVector = Vector<double>;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

inline constexpr double kDefaultHermitianTol = 1e-10;

namespace detail {

template <typename DerivedA, typename DerivedB>
void require_same_square(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                         const char* what) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        std::ostringstream msg;
        msg << what << ": expected square matrices of equal dimension, got " << a.rows() << "x" << a.cols()
            << " and " << b.rows() << "x" << b.cols();
        throw ValidationError(msg.str());
    }
}

} // namespace detail

/// Hilbert-Schmidt inner product tr(X^dagger Y), conjugate-linear in X.
template <typename DerivedX, typename DerivedY>
auto hs_inner(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
    detail::require_same_square(x, y, "hs_inner");
    return (x.conjugate().cwiseProduct(y)).sum();
}

/// Frobenius norm sqrt(sum |x_ij|^2).
template <typename Derived>
auto hs_norm(const Eigen::MatrixBase<Derived>& x) {
    return x.norm();
}

template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DerivedA::Scalar, typename DerivedB::Scalar>::ReturnType;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = Scalar(a(i, j)) * b.template cast<Scalar>();
        }
    }
    return out;
}

/// ||H - H^dagger|| / ||H|| (0 for the zero matrix).
template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& h) {
    const double scale = static_cast<double>(h.norm());
    const double defect = static_cast<double>((h - h.adjoint()).norm());
    return scale == 0.0 ? defect : defect / scale;
}

template <typename Real>
struct HermitianEigen {
    Eigen::Matrix<Real, Eigen::Dynamic, 1> values; // ascending
    Matrix<Real> vectors;                          // columns are eigenvectors, unitary
};

/// Spectral decomposition of a Hermitian matrix. Rejects inputs with
/// ||H - H^dagger|| > tol_herm * ||H||.
template <typename Derived>
auto eig_hermitian(const Eigen::MatrixBase<Derived>& h, double tol_herm = kDefaultHermitianTol) {
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    if (h.rows() != h.cols()) {
        throw ValidationError("eig_hermitian: matrix is not square");
    }
    const double defect = hermiticity_defect(h);
    if (defect > tol_herm) {
        std::ostringstream msg;
        msg << "eig_hermitian: input not Hermitian, relative defect " << defect << " exceeds tol_herm " << tol_herm;
        throw ValidationError(msg.str());
    }
    const Matrix<Real> sym = (h + h.adjoint()).template cast<std::complex<Real>>() / Real(2);
    Eigen::SelfAdjointEigenSolver<Matrix<Real>> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eig_hermitian: self-adjoint eigensolver did not converge");
    }
    return HermitianEigen<Real>{solver.eigenvalues(), solver.eigenvectors()};
}

template <typename Real>
struct EigenPair {
    std::complex<Real> value;
    Vector<Real> vector; // unit 2-norm
};

/// Thrown by eig_general when the Schur iteration hits its cap. The diagonal of
/// the partially reduced triangular factor is kept; trailing entries are the
/// ones that had deflated before the failure.
class EigenSolverError : public NumericalError {
public:
    EigenSolverError(const std::string& what, std::vector<std::complex<double>> partial)
        : NumericalError(what), partial_eigenvalues(std::move(partial)) {}
    std::vector<std::complex<double>> partial_eigenvalues;
};

/// Full eigen-decomposition of a general square matrix via complex Schur form
/// and triangular back-substitution. `max_iterations` of 0 keeps Eigen's default cap.
template <typename Derived>
auto eig_general(const Eigen::MatrixBase<Derived>& m, Eigen::Index max_iterations = 0) {
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    using C = std::complex<Real>;
    if (m.rows() != m.cols()) {
        throw ValidationError("eig_general: matrix is not square");
    }
    const Eigen::Index n = m.rows();
    const Matrix<Real> a = m.template cast<C>();

    Eigen::ComplexSchur<Matrix<Real>> schur(n);
    if (max_iterations > 0) {
        schur.setMaxIterations(max_iterations);
    }
    schur.compute(a, true);
    const Matrix<Real>& t = schur.matrixT();
    if (schur.info() != Eigen::Success) {
        std::vector<std::complex<double>> partial;
        for (Eigen::Index i = 0; i < n; ++i) {
            partial.emplace_back(static_cast<double>(t(i, i).real()), static_cast<double>(t(i, i).imag()));
        }
        throw EigenSolverError("eig_general: Schur iteration did not converge within the iteration cap",
                               std::move(partial));
    }
    const Matrix<Real>& z = schur.matrixU();

    // Tiny pivots arise for repeated eigenvalues; perturb them to keep the
    // back-substitution finite.
    const Real norm_t = std::max(t.norm(), std::numeric_limits<Real>::min());
    const Real floor = std::numeric_limits<Real>::epsilon() * norm_t;

    std::vector<EigenPair<Real>> pairs;
    pairs.reserve(static_cast<std::size_t>(n));
    Vector<Real> y(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const C lambda = t(k, k);
        y.setZero();
        y(k) = C(1);
        for (Eigen::Index i = k - 1; i >= 0; --i) {
            C acc = t.row(i).segment(i + 1, k - i) * y.segment(i + 1, k - i);
            C pivot = t(i, i) - lambda;
            if (std::abs(pivot) < floor) {
                pivot = C(floor);
            }
            y(i) = -acc / pivot;
        }
        Vector<Real> v = z * y;
        v /= v.norm();
        pairs.push_back({lambda, std::move(v)});
    }
    return pairs;
}

} // namespace dqwalk
