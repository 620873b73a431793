#pragma once

#include <vector>

#include "dqwalk/linalg.hpp"

namespace dqwalk {

inline constexpr double kDensityTol = 1e-10;

/// Unit-trace positive-semidefinite operator. Instances always satisfy the
/// Hermitian, trace and eigenvalue-floor invariants (all within kDensityTol).
class DensityMatrix {
public:
    /// Validates `m` as-is; throws ValidationError on any violated invariant.
    static DensityMatrix from_matrix(ComplexMatrix m);

    /// For channel output: hermitizes, clips eigenvalues in [-kDensityTol, 0)
    /// to zero and renormalizes the trace. Eigenvalues below -kDensityTol or a
    /// trace off by more than kDensityTol are still errors.
    static DensityMatrix from_numerical(const ComplexMatrix& m);

    /// The dim x dim maximally mixed state I/dim.
    static DensityMatrix maximally_mixed(Eigen::Index dim);

    Eigen::Index dim() const { return mat_.rows(); }
    const ComplexMatrix& matrix() const { return mat_; }

private:
    explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
    ComplexMatrix mat_;
};

/// Finite Kraus set {A_i} acting as X -> sum_i A_i X A_i^dagger.
class QuantumOperation {
public:
    explicit QuantumOperation(std::vector<ComplexMatrix> kraus);

    Eigen::Index dim() const { return kraus_.front().rows(); }
    const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

private:
    std::vector<ComplexMatrix> kraus_;
};

struct WeightedUnitary {
    double p;
    ComplexMatrix u;
};

/// Generalized random unitary operation:
///   X -> sum_i p_i U_i X U_i^dagger + q * sum_j A_j X A_j^dagger
/// with q + sum p_i = 1 and a noise part that is itself trace-preserving and
/// unital (sum A_j^dagger A_j = sum A_j A_j^dagger = I).
class Gro {
public:
    Gro(std::vector<WeightedUnitary> unitaries, double q, QuantumOperation noise);

    Eigen::Index dim() const { return noise_.dim(); }
    const std::vector<WeightedUnitary>& unitaries() const { return unitaries_; }
    double q() const { return q_; }
    const QuantumOperation& noise() const { return noise_; }

    /// Equivalent plain Kraus set {sqrt(p_i) U_i} u {sqrt(q) A_j}; zero weights dropped.
    QuantumOperation kraus_form() const;

private:
    std::vector<WeightedUnitary> unitaries_;
    double q_;
    QuantumOperation noise_;
};

/// sum_i A_i X A_i^dagger.
ComplexMatrix apply_channel(const QuantumOperation& op, const ComplexMatrix& x);
/// sum_i p_i U_i X U_i^dagger + q sum_j A_j X A_j^dagger.
ComplexMatrix apply_gro(const Gro& g, const ComplexMatrix& x);

/// Density-to-density application; output passes through DensityMatrix::from_numerical.
DensityMatrix apply_gro(const Gro& g, const DensityMatrix& rho);

struct CheckReport {
    bool pass;
    double residual;
};

/// ||sum A_i^dagger A_i - I||, pass iff residual <= 1e-10 * sqrt(dim).
CheckReport check_trace_preserving(const QuantumOperation& op);
/// ||sum A_i A_i^dagger - I||, same threshold.
CheckReport check_unital(const QuantumOperation& op);

/// Choi matrix J = sum_{a,b} E_ab (x) Phi(E_ab), dim^2 x dim^2.
ComplexMatrix choi_matrix(const QuantumOperation& op);

struct PositivityReport {
    bool pass;
    double min_choi_eigenvalue;
};

/// pass iff the smallest Choi eigenvalue is >= -1e-9 * ||J||.
PositivityReport is_completely_positive(const QuantumOperation& op);

/// Unitarity defect ||U^dagger U - I||.
double unitarity_defect(const ComplexMatrix& u);

} // namespace dqwalk
