#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dqwalk/walk.hpp"

namespace dqwalk {

inline constexpr double kDefaultEpsilon = 1e-6;
inline constexpr std::size_t kDefaultMaxSteps = 100000;

/// rho(t) = Phi^t rho(0) for t = 0..T together with per-step diagnostics.
struct Trajectory {
    WalkSpec spec;
    std::vector<DensityMatrix> states;
    std::vector<double> distance_to_limit;  // ||rho(t) - limit_state(t)||
    std::vector<RealVector> position_dist;  // P(x, t)
    std::vector<double> parity_overlap;     // c_t = <I_{+-1}, rho(t)>

    std::size_t steps() const { return states.empty() ? 0 : states.size() - 1; }
};

/// Real part of <I_{+-1}, rho>.
double parity_overlap(const DensityMatrix& rho, int n);

/// Odd N: I/(2N). Even N: I/(2N) + (-1)^t c/(2N) I_{+-1} with c = <I_{+-1}, rho0>.
DensityMatrix limit_state(const WalkSpec& spec, const DensityMatrix& rho0, std::size_t t);

/// P(x) = rho[(x,r),(x,r)] + rho[(x,l),(x,l)]. Throws NumericalError if a
/// diagonal entry carries an imaginary part above 1e-12.
RealVector position_distribution(const DensityMatrix& rho, int n);

struct EvolveOptions {
    /// Stop once distance_to_limit has been below this value for two
    /// consecutive steps (one of each parity).
    std::optional<double> stop_below;
};

/// Iterates the walk channel for at most `steps` steps.
Trajectory evolve(const WalkSpec& spec, const DensityMatrix& rho0, std::size_t steps, EvolveOptions options = {});

struct ParityConvergence {
    int parity;                          // t mod 2
    std::optional<std::size_t> first_t_below;
    double tail_sup;                     // sup of distance over t >= first_t_below in this class
};

struct ConvergenceSummary {
    double final_distance;
    std::optional<std::size_t> first_t_below; // first t after which every distance stays below epsilon
    double epsilon;
    std::vector<ParityConvergence> parity_split; // filled for even N only
};

ConvergenceSummary convergence_report(const Trajectory& traj, double epsilon = kDefaultEpsilon);

} // namespace dqwalk
