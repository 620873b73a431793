#pragma once

// Numerical checks of the asymptotic claims for the decoherent cycle walk.
// Each check returns one pass/fail line with what was measured against what
// was required; both the acceptance suite and `dqwalk verify-all` use them.

#include <cstddef>
#include <string>
#include <vector>

#include "dqwalk/random.hpp"
#include "dqwalk/walk.hpp"

namespace dqwalk::verify {

struct CriterionResult {
    std::string id;
    std::string title;
    bool pass;
    std::string measured;
    std::string expected;
};

/// Peripheral spectrum count, values, eigenmatrix shapes and (even N) orthogonality.
CriterionResult peripheral_spectrum(const std::string& id, const std::vector<WalkSpec>& specs, double tol = 1e-7);

/// Both directions of the unit-circle eigenspace characterization on every
/// peripheral pair, plus failure of the forward conditions on random matrices.
CriterionResult eigen_pair_equivalence(const std::string& id, const std::vector<WalkSpec>& specs, Rng& rng,
                                     int random_samples = 20, double tol = 1e-7, double fail_floor = 1e-3);

/// Convergence of rho(t) to the (parity-dependent) limit state below `eps`
/// within `max_t` steps, from node(0,r); odd N also from `random_starts`
/// random mixed states, even N also from the parity-balanced start.
CriterionResult limit_state_convergence(const std::string& id, const WalkSpec& spec, Rng& rng, std::size_t max_t,
                                        double eps = 1e-8, int random_starts = 5);

/// Limiting position distributions: uniform 1/N for odd N and for even N with
/// a parity-balanced start; mass 2/N on supporting nodes for even N from a node.
CriterionResult position_limits(const std::string& id, const WalkSpec& spec, std::size_t max_t, double tol = 1e-6);

/// Mutual information below `tol` at every t past the convergence time.
CriterionResult mutual_info_collapse(const std::string& id, const WalkSpec& spec, std::size_t max_t,
                                     double tol = 1e-6, double converge_eps = 1e-8, std::size_t tail = 200);

/// Trace-preserving, unital and completely positive channel for every spec.
CriterionResult channel_certification(const std::string& id, const std::vector<WalkSpec>& specs);

/// ||Phi(X)|| <= ||X|| on random X; equality on span{I, I_{+-1}} (even N) or span{I} (odd N).
CriterionResult contractivity(const std::string& id, const WalkSpec& spec, Rng& rng, int samples = 100,
                              double tol = 1e-10);

/// <Phi^dagger X, Y> = <X, Phi Y> on random pairs and Phi^dagger(X) = conj(lambda) X on peripheral pairs.
CriterionResult adjoint_duality(const std::string& id, const WalkSpec& spec, Rng& rng, int samples = 50,
                                double tol = 1e-10, double peripheral_tol = 1e-7);

/// Superoperator action against direct Kraus application on random matrices.
CriterionResult superoperator_oracle(const std::string& id, const std::vector<WalkSpec>& specs, Rng& rng,
                                     int samples = 20, double tol = 1e-12);

/// distance(t) <= slack * r^t * distance(0) for t >= t0, with r the largest
/// interior eigenvalue modulus; checked while the envelope stays above the
/// roundoff floor `resolution`.
CriterionResult decay_envelope(const std::string& id, const WalkSpec& spec, std::size_t max_t, double slack = 10.0,
                               std::size_t t0 = 20, double resolution = 1e-13);

/// The full battery for a single walk specification.
std::vector<CriterionResult> verify_all(const WalkSpec& spec, Rng& rng, std::size_t max_t);

} // namespace dqwalk::verify
