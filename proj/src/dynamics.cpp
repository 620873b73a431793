#include "dqwalk/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dqwalk {

namespace {

constexpr double kImagTol = 1e-12;

void require_walk_dim(const DensityMatrix& rho, int n) {
    if (rho.dim() != 2 * static_cast<Eigen::Index>(n)) {
        std::ostringstream msg;
        msg << "state dimension " << rho.dim() << " does not match walk dimension " << 2 * n;
        throw ValidationError(msg.str());
    }
}

// First index t0 such that values[t] < eps for every t >= t0 in the given stride class.
std::optional<std::size_t> first_persistent_below(const std::vector<double>& values, double eps, std::size_t start,
                                                  std::size_t stride) {
    std::optional<std::size_t> first;
    for (std::size_t t = start; t < values.size(); t += stride) {
        if (values[t] < eps) {
            if (!first) {
                first = t;
            }
        } else {
            first.reset();
        }
    }
    return first;
}

} // namespace

double parity_overlap(const DensityMatrix& rho, int n) {
    require_walk_dim(rho, n);
    return hs_inner(parity_operator(n), rho.matrix()).real();
}

DensityMatrix limit_state(const WalkSpec& spec, const DensityMatrix& rho0, std::size_t t) {
    require_walk_dim(rho0, spec.n);
    const Eigen::Index dim = spec.dim();
    ComplexMatrix limit = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
    if (spec.n % 2 == 0) {
        const double c = parity_overlap(rho0, spec.n);
        const double sign = (t % 2 == 0) ? 1.0 : -1.0;
        limit += (sign * c / static_cast<double>(dim)) * parity_operator(spec.n);
    }
    return DensityMatrix::from_matrix(std::move(limit));
}

RealVector position_distribution(const DensityMatrix& rho, int n) {
    require_walk_dim(rho, n);
    RealVector p(n);
    for (int x = 0; x < n; ++x) {
        const Complex a = rho.matrix()(basis_index(x, CoinState::right), basis_index(x, CoinState::right));
        const Complex b = rho.matrix()(basis_index(x, CoinState::left), basis_index(x, CoinState::left));
        if (std::abs(a.imag()) > kImagTol || std::abs(b.imag()) > kImagTol) {
            std::ostringstream msg;
            msg << "diagonal of density matrix at node " << x << " has imaginary residue above " << kImagTol;
            throw NumericalError(msg.str());
        }
        p(x) = a.real() + b.real();
    }
    return p;
}

Trajectory evolve(const WalkSpec& spec, const DensityMatrix& rho0, std::size_t steps, EvolveOptions options) {
    require_walk_dim(rho0, spec.n);
    const Gro channel = build_channel(spec);
    const ComplexMatrix identity_part =
        ComplexMatrix::Identity(spec.dim(), spec.dim()) / static_cast<double>(spec.dim());
    const ComplexMatrix parity = parity_operator(spec.n);
    const bool even = spec.n % 2 == 0;
    const double c0 = parity_overlap(rho0, spec.n);

    Trajectory traj{spec, {}, {}, {}, {}};
    traj.states.reserve(steps + 1);
    traj.states.push_back(rho0);
    for (std::size_t t = 0; t <= steps; ++t) {
        if (t > 0) {
            traj.states.push_back(apply_gro(channel, traj.states.back()));
        }
        const DensityMatrix& rho = traj.states.back();
        ComplexMatrix limit = identity_part;
        if (even) {
            limit += ((t % 2 == 0 ? 1.0 : -1.0) * c0 / static_cast<double>(spec.dim())) * parity;
        }
        traj.distance_to_limit.push_back((rho.matrix() - limit).norm());
        traj.position_dist.push_back(position_distribution(rho, spec.n));
        traj.parity_overlap.push_back(hs_inner(parity, rho.matrix()).real());
        if (options.stop_below && t > 0 && traj.distance_to_limit[t] < *options.stop_below &&
            traj.distance_to_limit[t - 1] < *options.stop_below) {
            break;
        }
    }
    return traj;
}

ConvergenceSummary convergence_report(const Trajectory& traj, double epsilon) {
    if (traj.distance_to_limit.empty()) {
        throw ValidationError("convergence_report: empty trajectory");
    }
    if (!(epsilon > 0.0)) {
        throw ValidationError("convergence_report: epsilon must be positive");
    }
    const auto& d = traj.distance_to_limit;
    ConvergenceSummary summary{d.back(), first_persistent_below(d, epsilon, 0, 1), epsilon, {}};
    if (traj.spec.n % 2 == 0) {
        for (int parity = 0; parity < 2; ++parity) {
            ParityConvergence pc{parity, first_persistent_below(d, epsilon, static_cast<std::size_t>(parity), 2), 0.0};
            const std::size_t from = pc.first_t_below.value_or(static_cast<std::size_t>(parity));
            for (std::size_t t = from; t < d.size(); t += 2) {
                pc.tail_sup = std::max(pc.tail_sup, d[t]);
            }
            summary.parity_split.push_back(pc);
        }
    }
    return summary;
}

} // namespace dqwalk
