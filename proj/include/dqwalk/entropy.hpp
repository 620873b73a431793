#pragma once

#include <cstddef>
#include <vector>

#include "dqwalk/dynamics.hpp"

namespace dqwalk {

/// Entropies in nats of the joint walk state and its coin / walker marginals.
struct EntanglementRecord {
    std::size_t t = 0;
    double s_joint;
    double s_coin;
    double s_walker;
    double mutual_info;
};

/// (rho_c)_{ij} = sum_x rho[(x,i),(x,j)].
DensityMatrix partial_trace_coin(const DensityMatrix& rho, int n);
/// (rho_w)_{xy} = sum_i rho[(x,i),(y,i)].
DensityMatrix partial_trace_walker(const DensityMatrix& rho, int n);

/// -sum lambda ln lambda with 0 ln 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// S(coin) + S(walker) - S(joint); floored at -1e-9.
EntanglementRecord mutual_information(const DensityMatrix& rho, int n);

std::vector<EntanglementRecord> entanglement_trajectory(const Trajectory& traj);

} // namespace dqwalk
