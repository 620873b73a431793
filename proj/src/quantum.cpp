#include "dqwalk/quantum.hpp"

#include <cmath>
#include <sstream>

namespace dqwalk {

namespace {

constexpr double kCertifyTol = 1e-10;
constexpr double kWeightTol = 1e-12;
constexpr double kCpTol = 1e-9;

void require_dim(const ComplexMatrix& x, Eigen::Index dim, const char* what) {
    if (x.rows() != dim || x.cols() != dim) {
        std::ostringstream msg;
        msg << what << ": operand is " << x.rows() << "x" << x.cols() << ", channel dimension is " << dim;
        throw ValidationError(msg.str());
    }
}

} // namespace

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw ValidationError("density matrix must be square and nonempty");
    }
    if (!m.allFinite()) {
        throw ValidationError("density matrix has non-finite entries");
    }
    const double herm = hermiticity_defect(m);
    if (herm > kDensityTol) {
        std::ostringstream msg;
        msg << "density matrix not Hermitian (relative defect " << herm << ")";
        throw ValidationError(msg.str());
    }
    const Complex tr = m.trace();
    if (std::abs(tr - Complex(1.0)) > kDensityTol) {
        std::ostringstream msg;
        msg << "density matrix trace " << tr << " differs from 1";
        throw ValidationError(msg.str());
    }
    const double min_eig = eig_hermitian(m).values(0);
    if (min_eig < -kDensityTol) {
        std::ostringstream msg;
        msg << "density matrix has eigenvalue " << min_eig << " below -" << kDensityTol;
        throw ValidationError(msg.str());
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_numerical(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw ValidationError("density matrix must be square and nonempty");
    }
    if (!m.allFinite()) {
        throw NumericalError("numerical density matrix has non-finite entries");
    }
    ComplexMatrix h = (m + m.adjoint()) / 2.0;
    const auto eig = eig_hermitian(h);
    if (eig.values(0) < -kDensityTol) {
        std::ostringstream msg;
        msg << "numerical density matrix has eigenvalue " << eig.values(0) << " below -" << kDensityTol;
        throw NumericalError(msg.str());
    }
    if (eig.values(0) < 0.0) {
        const RealVector clipped = eig.values.cwiseMax(0.0);
        h = eig.vectors * clipped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    }
    const double tr = h.trace().real();
    if (std::abs(tr - 1.0) > kDensityTol) {
        std::ostringstream msg;
        msg << "numerical density matrix trace " << tr << " drifted from 1";
        throw NumericalError(msg.str());
    }
    h /= tr;
    return DensityMatrix(std::move(h));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    if (dim <= 0) {
        throw ValidationError("maximally_mixed: dimension must be positive");
    }
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

QuantumOperation::QuantumOperation(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw ValidationError("quantum operation needs at least one Kraus operator");
    }
    const Eigen::Index n = kraus_.front().rows();
    if (n == 0) {
        throw ValidationError("Kraus operators must be nonempty");
    }
    for (const auto& a : kraus_) {
        if (a.rows() != n || a.cols() != n) {
            throw ValidationError("Kraus operators must be square and of equal dimension");
        }
        if (!a.allFinite()) {
            throw ValidationError("Kraus operator has non-finite entries");
        }
    }
}

double unitarity_defect(const ComplexMatrix& u) {
    return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

Gro::Gro(std::vector<WeightedUnitary> unitaries, double q, QuantumOperation noise)
    : unitaries_(std::move(unitaries)), q_(q), noise_(std::move(noise)) {
    if (!(q_ >= 0.0 && q_ <= 1.0)) {
        throw ValidationError("GRO weight q must lie in [0, 1]");
    }
    double total = q_;
    for (const auto& w : unitaries_) {
        if (!(w.p >= 0.0)) {
            throw ValidationError("GRO unitary probabilities must be nonnegative");
        }
        require_dim(w.u, noise_.dim(), "GRO unitary");
        const double defect = unitarity_defect(w.u);
        if (defect > kCertifyTol) {
            std::ostringstream msg;
            msg << "GRO component is not unitary (defect " << defect << ")";
            throw ValidationError(msg.str());
        }
        total += w.p;
    }
    if (std::abs(total - 1.0) > kWeightTol) {
        std::ostringstream msg;
        msg << "GRO weights sum to " << total << ", expected q + sum p_i = 1";
        throw ValidationError(msg.str());
    }
    const auto tp = check_trace_preserving(noise_);
    const auto un = check_unital(noise_);
    if (!tp.pass || !un.pass) {
        std::ostringstream msg;
        msg << "GRO noise part must be trace-preserving and unital (residuals " << tp.residual << ", " << un.residual
            << ")";
        throw ValidationError(msg.str());
    }
}

QuantumOperation Gro::kraus_form() const {
    std::vector<ComplexMatrix> ks;
    for (const auto& w : unitaries_) {
        if (w.p > 0.0) {
            ks.push_back(std::sqrt(w.p) * w.u);
        }
    }
    if (q_ > 0.0) {
        for (const auto& a : noise_.kraus()) {
            ks.push_back(std::sqrt(q_) * a);
        }
    }
    return QuantumOperation(std::move(ks));
}

ComplexMatrix apply_channel(const QuantumOperation& op, const ComplexMatrix& x) {
    require_dim(x, op.dim(), "apply_channel");
    ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
    for (const auto& a : op.kraus()) {
        out.noalias() += a * x * a.adjoint();
    }
    return out;
}

ComplexMatrix apply_gro(const Gro& g, const ComplexMatrix& x) {
    require_dim(x, g.dim(), "apply_gro");
    ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
    for (const auto& w : g.unitaries()) {
        out.noalias() += w.p * (w.u * x * w.u.adjoint());
    }
    if (g.q() > 0.0) {
        out += g.q() * apply_channel(g.noise(), x);
    }
    return out;
}

DensityMatrix apply_gro(const Gro& g, const DensityMatrix& rho) {
    return DensityMatrix::from_numerical(apply_gro(g, rho.matrix()));
}

CheckReport check_trace_preserving(const QuantumOperation& op) {
    const Eigen::Index n = op.dim();
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (const auto& a : op.kraus()) {
        sum.noalias() += a.adjoint() * a;
    }
    const double residual = (sum - ComplexMatrix::Identity(n, n)).norm();
    return {residual <= kCertifyTol * std::sqrt(static_cast<double>(n)), residual};
}

CheckReport check_unital(const QuantumOperation& op) {
    const Eigen::Index n = op.dim();
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (const auto& a : op.kraus()) {
        sum.noalias() += a * a.adjoint();
    }
    const double residual = (sum - ComplexMatrix::Identity(n, n)).norm();
    return {residual <= kCertifyTol * std::sqrt(static_cast<double>(n)), residual};
}

ComplexMatrix choi_matrix(const QuantumOperation& op) {
    const Eigen::Index n = op.dim();
    ComplexMatrix j = ComplexMatrix::Zero(n * n, n * n);
    ComplexMatrix unit = ComplexMatrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            unit(a, b) = 1.0;
            j.block(a * n, b * n, n, n) = apply_channel(op, unit);
            unit(a, b) = 0.0;
        }
    }
    return j;
}

PositivityReport is_completely_positive(const QuantumOperation& op) {
    const ComplexMatrix j = choi_matrix(op);
    const double min_eig = eig_hermitian(j).values(0);
    return {min_eig >= -kCpTol * j.norm(), min_eig};
}

} // namespace dqwalk
