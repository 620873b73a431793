#pragma once

#include <string>
#include <vector>

#include "dqwalk/quantum.hpp"
#include "dqwalk/walk.hpp"

namespace dqwalk {

inline constexpr double kDefaultPeripheralTol = 1e-6;

/// Column-stacking vec: vec(A X B) = (B^T (x) A) vec(X).
ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index n);

/// Matrix [Phi] of a channel acting on vec'd n x n operators.
struct Superoperator {
    Eigen::Index dim; // operator dimension n; mat is n^2 x n^2
    ComplexMatrix mat;

    ComplexMatrix apply(const ComplexMatrix& x) const;
};

Superoperator matricize(const QuantumOperation& op);
/// [Phi] = sum_i p_i conj(U_i) (x) U_i + q sum_j conj(A_j) (x) A_j.
Superoperator matricize(const Gro& g);

/// Hilbert-Schmidt adjoint: unitaries U_i -> U_i^dagger, noise A_j -> A_j^dagger.
Gro adjoint(const Gro& g);
/// Phi^dagger(rho) = (1-q) U^dagger rho U + q sum U^dagger P_xi rho P_xi U.
Gro adjoint_channel(const WalkSpec& spec);

double spectral_radius(const Superoperator& s);

struct SpectralPair {
    Complex value;
    ComplexMatrix eigenmatrix; // unit Frobenius norm, phase-fixed
    double residual;           // ||Phi(X) - lambda X|| / ||X||
};

struct SpectralReport {
    std::vector<SpectralPair> peripheral; // |lambda| >= 1 - tol_peri
    std::vector<SpectralPair> interior;
    double interior_max_modulus = 0.0;
    double tol_peri = kDefaultPeripheralTol;
};

/// Partitions the spectrum of [Phi] at modulus 1 - tol_peri. Peripheral
/// eigenvectors sharing an eigenvalue are orthonormalized within their
/// eigenspace; eigenmatrices are scaled so the first nonzero diagonal entry is
/// real positive.
SpectralReport peripheral_spectrum(const Superoperator& s, double tol_peri = kDefaultPeripheralTol);

struct StructureReport {
    bool pass;
    double deviation; // worst eigenvalue or proportionality deviation
    std::string detail;
};

/// Checks the walk-channel peripheral structure: odd N gives only lambda = 1
/// with eigenmatrix ~ I; even N gives exactly lambda = 1 (~ I) and lambda = -1 (~ I_{+-1}).
StructureReport verify_eigenspace_structure(const SpectralReport& report, int n, double tol = 1e-7);

struct EigenPairReport {
    bool forward_pass;         // U_i X = lambda X U_i and U_i X U_i^dagger = sum A_j X A_j^dagger, all i
    bool backward_pass;        // Phi(X) = lambda X
    double commutation_residual;
    double noise_residual;
    double eigen_residual;
};

/// Residuals are relative to ||X||. Requires |lambda| = 1 within 1e-9.
EigenPairReport check_eigen_pair_conditions(const Gro& g, const ComplexMatrix& x, Complex lambda, double tol = 1e-8);

/// Largest |<X, Y>| over peripheral eigenmatrices with distinct eigenvalues.
CheckReport check_orthogonality(const SpectralReport& report, double tol = 1e-7);

/// Proportionality defect ||X - (<T,X>/<T,T>) T|| / ||X||.
double proportionality_defect(const ComplexMatrix& x, const ComplexMatrix& target);

} // namespace dqwalk
