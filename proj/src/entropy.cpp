#include "dqwalk/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dqwalk {

namespace {

constexpr double kMutualInfoFloor = -1e-9;

void require_walk_dim(const DensityMatrix& rho, int n) {
    if (n < 1 || rho.dim() != 2 * static_cast<Eigen::Index>(n)) {
        std::ostringstream msg;
        msg << "partial trace: state dimension " << rho.dim() << " is not 2N for N=" << n;
        throw ValidationError(msg.str());
    }
}

} // namespace

DensityMatrix partial_trace_coin(const DensityMatrix& rho, int n) {
    require_walk_dim(rho, n);
    ComplexMatrix out = ComplexMatrix::Zero(2, 2);
    for (int x = 0; x < n; ++x) {
        out += rho.matrix().block<2, 2>(2 * x, 2 * x);
    }
    return DensityMatrix::from_numerical(out);
}

DensityMatrix partial_trace_walker(const DensityMatrix& rho, int n) {
    require_walk_dim(rho, n);
    ComplexMatrix out(n, n);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            out(x, y) = rho.matrix()(2 * x, 2 * y) + rho.matrix()(2 * x + 1, 2 * y + 1);
        }
    }
    return DensityMatrix::from_numerical(out);
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const RealVector lambda = eig_hermitian(rho.matrix()).values.cwiseMax(0.0).cwiseMin(1.0);
    const double total = lambda.sum();
    double s = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        const double p = lambda(i) / total;
        if (p > 0.0) {
            s -= p * std::log(p);
        }
    }
    return std::max(s, 0.0);
}

EntanglementRecord mutual_information(const DensityMatrix& rho, int n) {
    EntanglementRecord r;
    r.s_joint = von_neumann_entropy(rho);
    r.s_coin = von_neumann_entropy(partial_trace_coin(rho, n));
    r.s_walker = von_neumann_entropy(partial_trace_walker(rho, n));
    r.mutual_info = std::max(r.s_coin + r.s_walker - r.s_joint, kMutualInfoFloor);
    return r;
}

std::vector<EntanglementRecord> entanglement_trajectory(const Trajectory& traj) {
    std::vector<EntanglementRecord> out;
    out.reserve(traj.states.size());
    for (std::size_t t = 0; t < traj.states.size(); ++t) {
        auto r = mutual_information(traj.states[t], traj.spec.n);
        r.t = t;
        out.push_back(r);
    }
    return out;
}

} // namespace dqwalk
