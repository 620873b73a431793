#include "dqwalk/walk.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace dqwalk {

namespace {

constexpr double kCoinTol = 1e-12;

void require_cycle(int n) {
    if (n < 3) {
        std::ostringstream msg;
        msg << "cycle length N must be >= 3, got " << n;
        throw ValidationError(msg.str());
    }
}

} // namespace

CoinOperator::CoinOperator(Complex u11, Complex u12, Complex u21, Complex u22) : mat_(2, 2) {
    mat_ << u11, u12, u21, u22;
    if (!mat_.allFinite()) {
        throw ValidationError("coin entries must be finite");
    }
    for (Eigen::Index i = 0; i < 4; ++i) {
        if (std::abs(mat_(i / 2, i % 2)) <= kCoinTol) {
            std::ostringstream msg;
            msg << "coin entry u" << (i / 2 + 1) << (i % 2 + 1) << " is zero; all coin entries must be nonzero";
            throw ValidationError(msg.str());
        }
    }
    const double defect = unitarity_defect(mat_);
    if (defect > kCoinTol) {
        std::ostringstream msg;
        msg << "coin is not unitary (defect " << defect << ")";
        throw ValidationError(msg.str());
    }
}

CoinOperator CoinOperator::hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return CoinOperator(s, s, s, -s);
}

CoinOperator CoinOperator::parametric(double theta, double phi1, double phi2) {
    if (!(theta > 0.0 && theta < std::numbers::pi / 2)) {
        std::ostringstream msg;
        msg << "coin angle theta=" << theta << " must lie strictly inside (0, pi/2) so that all entries are nonzero";
        throw ValidationError(msg.str());
    }
    const Complex i(0.0, 1.0);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return CoinOperator(c * std::exp(i * phi1), s * std::exp(i * phi2), -s * std::exp(-i * phi2),
                        c * std::exp(-i * phi1));
}

WalkSpec::WalkSpec(int n_, double q_, CoinOperator coin_) : n(n_), q(q_), coin(std::move(coin_)) {
    require_cycle(n);
    if (!(q > 0.0 && q < 1.0)) {
        std::ostringstream msg;
        msg << "decoherence rate q=" << q << " must satisfy 0 < q < 1";
        throw ValidationError(msg.str());
    }
}

ComplexMatrix build_shift(int n) {
    require_cycle(n);
    const Eigen::Index dim = 2 * n;
    ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
    for (int x = 0; x < n; ++x) {
        s(basis_index((x + 1) % n, CoinState::right), basis_index(x, CoinState::right)) = 1.0;
        s(basis_index((x + n - 1) % n, CoinState::left), basis_index(x, CoinState::left)) = 1.0;
    }
    return s;
}

ComplexMatrix build_step_unitary(const WalkSpec& spec) {
    const ComplexMatrix id = ComplexMatrix::Identity(spec.n, spec.n);
    return build_shift(spec.n) * kron(id, spec.coin.matrix());
}

QuantumOperation build_projectors(int n) {
    require_cycle(n);
    const Eigen::Index dim = 2 * n;
    std::vector<ComplexMatrix> ps;
    ps.reserve(static_cast<std::size_t>(dim));
    for (Eigen::Index k = 0; k < dim; ++k) {
        ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
        p(k, k) = 1.0;
        ps.push_back(std::move(p));
    }
    return QuantumOperation(std::move(ps));
}

Gro build_channel(const WalkSpec& spec) {
    const ComplexMatrix u = build_step_unitary(spec);
    std::vector<ComplexMatrix> noise;
    const QuantumOperation projectors = build_projectors(spec.n);
    for (const auto& p : projectors.kraus()) {
        noise.push_back(p * u);
    }
    return Gro({{1.0 - spec.q, u}}, spec.q, QuantumOperation(std::move(noise)));
}

ComplexMatrix parity_operator(int n) {
    require_cycle(n);
    ComplexMatrix out = ComplexMatrix::Zero(2 * n, 2 * n);
    for (int x = 0; x < n; ++x) {
        const double sign = (x % 2 == 0) ? 1.0 : -1.0;
        out(basis_index(x, CoinState::right), basis_index(x, CoinState::right)) = sign;
        out(basis_index(x, CoinState::left), basis_index(x, CoinState::left)) = sign;
    }
    return out;
}

namespace {

void require_node(const WalkSpec& spec, int x) {
    if (x < 0 || x >= spec.n) {
        std::ostringstream msg;
        msg << "initial node " << x << " out of range [0, " << spec.n << ")";
        throw ValidationError(msg.str());
    }
}

} // namespace

DensityMatrix initial_state(const WalkSpec& spec, const InitialKind& kind) {
    ComplexMatrix rho = ComplexMatrix::Zero(spec.dim(), spec.dim());
    if (const auto* node = std::get_if<NodeInit>(&kind)) {
        require_node(spec, node->x);
        switch (node->coin) {
        case NodeInit::Coin::right:
            rho(basis_index(node->x, CoinState::right), basis_index(node->x, CoinState::right)) = 1.0;
            break;
        case NodeInit::Coin::left:
            rho(basis_index(node->x, CoinState::left), basis_index(node->x, CoinState::left)) = 1.0;
            break;
        case NodeInit::Coin::mixed:
            rho(basis_index(node->x, CoinState::right), basis_index(node->x, CoinState::right)) = 0.5;
            rho(basis_index(node->x, CoinState::left), basis_index(node->x, CoinState::left)) = 0.5;
            break;
        }
    } else {
        const auto& pb = std::get<ParityBalancedInit>(kind);
        require_node(spec, pb.x);
        const int next = (pb.x + 1) % spec.n;
        rho(basis_index(pb.x, pb.coin), basis_index(pb.x, pb.coin)) = 0.5;
        rho(basis_index(next, pb.coin), basis_index(next, pb.coin)) = 0.5;
    }
    return DensityMatrix::from_matrix(std::move(rho));
}

} // namespace dqwalk
