#include "dqwalk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dqwalk/dynamics.hpp"
#include "dqwalk/entropy.hpp"
#include "dqwalk/spectral.hpp"

namespace dqwalk::verify {

namespace {

std::string sci(double v) {
    std::ostringstream out;
    out.precision(3);
    out << std::scientific << v;
    return out.str();
}

std::string label(const WalkSpec& spec) {
    std::ostringstream out;
    out << "N=" << spec.n << ",q=" << spec.q;
    return out.str();
}

SpectralReport spectrum_of(const WalkSpec& spec) {
    return peripheral_spectrum(matricize(build_channel(spec)));
}

// First t with distance_to_limit below eps, if any.
std::optional<std::size_t> first_below(const Trajectory& traj, double eps) {
    for (std::size_t t = 0; t < traj.distance_to_limit.size(); ++t) {
        if (traj.distance_to_limit[t] < eps) {
            return t;
        }
    }
    return std::nullopt;
}

struct ParityHit {
    std::optional<std::size_t> even;
    std::optional<std::size_t> odd;
};

ParityHit first_below_by_parity(const Trajectory& traj, double eps) {
    ParityHit hit;
    for (std::size_t t = 0; t < traj.distance_to_limit.size(); ++t) {
        if (traj.distance_to_limit[t] < eps) {
            auto& slot = (t % 2 == 0) ? hit.even : hit.odd;
            if (!slot) {
                slot = t;
            }
        }
    }
    return hit;
}

} // namespace

CriterionResult peripheral_spectrum(const std::string& id, const std::vector<WalkSpec>& specs, double tol) {
    bool pass = true;
    double worst = 0.0;
    double worst_orth = 0.0;
    double max_interior = 0.0;
    std::string failure;
    for (const auto& spec : specs) {
        const auto report = spectrum_of(spec);
        const auto structure = verify_eigenspace_structure(report, spec.n, tol);
        const auto orth = check_orthogonality(report, tol);
        worst = std::max(worst, structure.deviation);
        worst_orth = std::max(worst_orth, orth.residual);
        max_interior = std::max(max_interior, report.interior_max_modulus);
        const bool gap_ok = report.interior_max_modulus < 1.0 - report.tol_peri;
        if (!(structure.pass && orth.pass && gap_ok) && failure.empty()) {
            failure = " first failure at " + label(spec) + ": " + structure.detail;
        }
        pass = pass && structure.pass && orth.pass && gap_ok;
    }
    return {id,
            "peripheral spectrum and eigenmatrices",
            pass,
            std::to_string(specs.size()) + " cases, worst deviation " + sci(worst) + ", worst orthogonality " +
                sci(worst_orth) + ", max interior modulus " + sci(max_interior) + failure,
            "{1} (odd N) / {1,-1} (even N), eigenmatrices ~ I, I_pm1 within " + sci(tol)};
}

CriterionResult eigen_pair_equivalence(const std::string& id, const std::vector<WalkSpec>& specs, Rng& rng,
                                     int random_samples, double tol, double fail_floor) {
    bool pass = true;
    double worst_pair = 0.0;
    double min_random = std::numeric_limits<double>::infinity();
    std::size_t pairs = 0;
    for (const auto& spec : specs) {
        const Gro channel = build_channel(spec);
        const auto report = spectrum_of(spec);
        for (const auto& p : report.peripheral) {
            // Snap onto the unit circle; the eigenvalue itself is accurate to ~1e-13.
            const Complex lambda = p.value / std::abs(p.value);
            const auto pair_check = check_eigen_pair_conditions(channel, p.eigenmatrix, lambda, tol);
            worst_pair = std::max({worst_pair, pair_check.commutation_residual, pair_check.noise_residual, pair_check.eigen_residual});
            pass = pass && pair_check.forward_pass && pair_check.backward_pass;
            ++pairs;
        }
        for (int k = 0; k < random_samples; ++k) {
            const ComplexMatrix x = random_matrix(spec.dim(), rng);
            for (const auto& p : report.peripheral) {
                const Complex lambda = p.value / std::abs(p.value);
                const auto pair_check = check_eigen_pair_conditions(channel, x, lambda, tol);
                const double forward = std::max(pair_check.commutation_residual, pair_check.noise_residual);
                min_random = std::min(min_random, forward);
                pass = pass && !pair_check.forward_pass && forward > fail_floor;
            }
        }
    }
    return {id,
            "eigen-pair conditions (both directions) and random non-eigen rejection",
            pass,
            std::to_string(pairs) + " peripheral pairs, worst residual " + sci(worst_pair) +
                "; min forward residual on random X " + sci(min_random),
            "pair residuals <= " + sci(tol) + ", random forward residual > " + sci(fail_floor)};
}

CriterionResult limit_state_convergence(const std::string& id, const WalkSpec& spec, Rng& rng, std::size_t max_t,
                                        double eps, int random_starts) {
    std::ostringstream measured;
    bool pass = true;
    const bool even = spec.n % 2 == 0;
    const EvolveOptions opts{eps};

    const DensityMatrix node = initial_state(spec, NodeInit{0, NodeInit::Coin::right});
    const auto traj = evolve(spec, node, max_t, opts);
    if (even) {
        const auto hit = first_below_by_parity(traj, eps);
        pass = pass && hit.even && hit.odd;
        measured << "node(0,r): c=" << parity_overlap(node, spec.n) << ", even t hit "
                 << (hit.even ? std::to_string(*hit.even) : "none") << ", odd t hit "
                 << (hit.odd ? std::to_string(*hit.odd) : "none");

        const DensityMatrix balanced = initial_state(spec, ParityBalancedInit{});
        const auto traj_b = evolve(spec, balanced, max_t, opts);
        const auto t_b = first_below(traj_b, eps);
        // With c = 0 the limit state is I/(2N) itself.
        const double c_b = parity_overlap(balanced, spec.n);
        pass = pass && t_b && std::abs(c_b) < 1e-12;
        measured << "; parity-balanced: c=" << c_b << ", hit " << (t_b ? std::to_string(*t_b) : "none");
    } else {
        const auto t_node = first_below(traj, eps);
        pass = pass && t_node.has_value();
        measured << "node(0,r) hit " << (t_node ? std::to_string(*t_node) : "none");
        std::size_t worst = 0;
        int hits = 0;
        for (int k = 0; k < random_starts; ++k) {
            const auto t = first_below(evolve(spec, random_density(spec.dim(), rng), max_t, opts), eps);
            if (t) {
                ++hits;
                worst = std::max(worst, *t);
            }
        }
        pass = pass && hits == random_starts;
        measured << "; random starts " << hits << "/" << random_starts << " converged, slowest at t=" << worst;
    }
    return {id, "limit state convergence at " + label(spec), pass, measured.str(),
            "||rho(t) - limit_state(t)|| < " + sci(eps) + " for some t <= " + std::to_string(max_t) +
                (even ? " along both parities" : "")};
}

CriterionResult position_limits(const std::string& id, const WalkSpec& spec, std::size_t max_t, double tol) {
    std::ostringstream measured;
    bool pass = true;
    const int n = spec.n;
    const EvolveOptions opts{1e-10};

    const auto deviation = [n](const RealVector& p, const RealVector& target) {
        return (p - target).cwiseAbs().maxCoeff();
    };
    const RealVector uniform = RealVector::Constant(n, 1.0 / n);

    const DensityMatrix node = initial_state(spec, NodeInit{0, NodeInit::Coin::right});
    const auto traj = evolve(spec, node, max_t, opts);
    const std::size_t last = traj.steps();
    if (n % 2 == 1) {
        const double dev = deviation(traj.position_dist[last], uniform);
        pass = dev < tol;
        measured << "(i) max_x |P(x," << last << ") - 1/N| = " << sci(dev);
    } else {
        // Supporting nodes at time t: (-1)^(x+t) sign(c) = +1.
        const double c = traj.parity_overlap.front();
        double worst = 0.0;
        for (std::size_t t : {last - 1, last}) {
            RealVector target(n);
            for (int x = 0; x < n; ++x) {
                const int sign = ((static_cast<std::size_t>(x) + t) % 2 == 0 ? 1 : -1) * (c > 0 ? 1 : -1);
                target(x) = sign > 0 ? 2.0 / n : 0.0;
            }
            worst = std::max(worst, deviation(traj.position_dist[t], target));
        }
        pass = worst < tol;
        measured << "(ii) node start, both parities: max deviation from 2/N on supporting nodes " << sci(worst);

        const auto traj_b = evolve(spec, initial_state(spec, ParityBalancedInit{}), max_t, opts);
        double worst_b = 0.0;
        for (std::size_t t : {traj_b.steps() - 1, traj_b.steps()}) {
            worst_b = std::max(worst_b, deviation(traj_b.position_dist[t], uniform));
        }
        pass = pass && worst_b < tol;
        measured << "; (iii) parity-balanced: max deviation from 1/N " << sci(worst_b);
    }
    return {id, "limiting position distribution at " + label(spec), pass, measured.str(),
            "deviation < " + sci(tol)};
}

CriterionResult mutual_info_collapse(const std::string& id, const WalkSpec& spec, std::size_t max_t, double tol,
                                     double converge_eps, std::size_t tail) {
    std::ostringstream measured;
    bool pass = true;
    std::vector<std::pair<std::string, DensityMatrix>> starts{
        {"node(0,r)", initial_state(spec, NodeInit{0, NodeInit::Coin::right})}};
    if (spec.n % 2 == 0) {
        starts.emplace_back("parity-balanced", initial_state(spec, ParityBalancedInit{}));
    }
    for (const auto& [name, rho0] : starts) {
        const auto probe = evolve(spec, rho0, max_t, EvolveOptions{converge_eps});
        const auto t_conv = first_below(probe, converge_eps);
        if (!t_conv) {
            pass = false;
            measured << name << ": no convergence; ";
            continue;
        }
        const auto traj = evolve(spec, rho0, *t_conv + tail);
        const auto records = entanglement_trajectory(traj);
        double sup_even = 0.0;
        double sup_odd = 0.0;
        for (std::size_t t = *t_conv; t < records.size(); ++t) {
            auto& sup = (t % 2 == 0) ? sup_even : sup_odd;
            sup = std::max(sup, records[t].mutual_info);
        }
        pass = pass && sup_even < tol && sup_odd < tol;
        measured << name << ": converged at t=" << *t_conv << ", sup mutual info over t in [" << *t_conv << ","
                 << traj.steps() << "] even " << sci(sup_even) << " odd " << sci(sup_odd) << "; ";
    }
    return {id, "coin-walker mutual information collapse at " + label(spec), pass, measured.str(),
            "mutual_info(t) < " + sci(tol) + " past convergence"};
}

CriterionResult channel_certification(const std::string& id, const std::vector<WalkSpec>& specs) {
    bool pass = true;
    double worst_tp = 0.0;
    double worst_un = 0.0;
    double min_choi = std::numeric_limits<double>::infinity();
    for (const auto& spec : specs) {
        const QuantumOperation kraus = build_channel(spec).kraus_form();
        const auto tp = check_trace_preserving(kraus);
        const auto un = check_unital(kraus);
        const auto cp = is_completely_positive(kraus);
        worst_tp = std::max(worst_tp, tp.residual);
        worst_un = std::max(worst_un, un.residual);
        min_choi = std::min(min_choi, cp.min_choi_eigenvalue);
        pass = pass && tp.pass && un.pass && cp.pass && cp.min_choi_eigenvalue >= -1e-9;
    }
    return {id,
            "channel certification",
            pass,
            std::to_string(specs.size()) + " channels, trace-preserving residual " + sci(worst_tp) +
                ", unital residual " + sci(worst_un) + ", min Choi eigenvalue " + sci(min_choi),
            "all pass, min Choi eigenvalue >= -1e-9"};
}

CriterionResult contractivity(const std::string& id, const WalkSpec& spec, Rng& rng, int samples, double tol) {
    const Gro channel = build_channel(spec);
    const Eigen::Index dim = spec.dim();
    double worst_growth = -std::numeric_limits<double>::infinity();
    double worst_equality = 0.0;
    for (int k = 0; k < samples; ++k) {
        const ComplexMatrix x = random_matrix(dim, rng);
        worst_growth = std::max(worst_growth, hs_norm(apply_gro(channel, x)) - hs_norm(x));

        std::normal_distribution<double> normal(0.0, 1.0);
        const double a_re = normal(rng);
        const double a_im = normal(rng);
        const double b_re = normal(rng);
        const double b_im = normal(rng);
        const Complex a(a_re, a_im);
        const Complex b(b_re, b_im);
        ComplexMatrix y = a * ComplexMatrix::Identity(dim, dim);
        if (spec.n % 2 == 0) {
            y += b * parity_operator(spec.n);
        }
        worst_equality = std::max(worst_equality, std::abs(hs_norm(apply_gro(channel, y)) - hs_norm(y)));
    }
    const bool pass = worst_growth <= tol && worst_equality <= tol;
    return {id, "contractivity at " + label(spec), pass,
            "max(||Phi X|| - ||X||) = " + sci(worst_growth) + ", norm change on span{I, I_pm1} " +
                sci(worst_equality),
            "<= " + sci(tol)};
}

CriterionResult adjoint_duality(const std::string& id, const WalkSpec& spec, Rng& rng, int samples, double tol,
                                double peripheral_tol) {
    const Gro channel = build_channel(spec);
    const Gro dual = adjoint_channel(spec);
    const Eigen::Index dim = spec.dim();
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const ComplexMatrix x = random_matrix(dim, rng);
        const ComplexMatrix y = random_matrix(dim, rng);
        const double gap = std::abs(hs_inner(apply_gro(dual, x), y) - hs_inner(x, apply_gro(channel, y)));
        worst = std::max(worst, gap / (x.norm() * y.norm()));
    }
    double worst_peripheral = 0.0;
    for (const auto& p : spectrum_of(spec).peripheral) {
        const double r = (apply_gro(dual, p.eigenmatrix) - std::conj(p.value) * p.eigenmatrix).norm() /
                         p.eigenmatrix.norm();
        worst_peripheral = std::max(worst_peripheral, r);
    }
    const bool pass = worst <= tol && worst_peripheral <= peripheral_tol;
    return {id, "adjoint duality at " + label(spec), pass,
            "relative duality gap " + sci(worst) + ", peripheral adjoint residual " + sci(worst_peripheral),
            "gap <= " + sci(tol) + ", residual <= " + sci(peripheral_tol)};
}

CriterionResult superoperator_oracle(const std::string& id, const std::vector<WalkSpec>& specs, Rng& rng, int samples,
                                     double tol) {
    double worst = 0.0;
    for (const auto& spec : specs) {
        const Gro channel = build_channel(spec);
        const QuantumOperation kraus = channel.kraus_form();
        const Superoperator sup = matricize(channel);
        for (int k = 0; k < samples; ++k) {
            const ComplexMatrix x = random_matrix(spec.dim(), rng);
            worst = std::max(worst, (sup.apply(x) - apply_channel(kraus, x)).norm() / x.norm());
        }
    }
    return {id, "superoperator vs Kraus application", worst <= tol,
            std::to_string(specs.size()) + " configurations, worst relative gap " + sci(worst), "<= " + sci(tol)};
}

CriterionResult decay_envelope(const std::string& id, const WalkSpec& spec, std::size_t max_t, double slack,
                               std::size_t t0, double resolution) {
    const double r = spectrum_of(spec).interior_max_modulus;
    const auto traj = evolve(spec, initial_state(spec, NodeInit{0, NodeInit::Coin::right}), max_t,
                             EvolveOptions{resolution * 1e-3});
    const double d0 = traj.distance_to_limit.front();
    double worst_ratio = 0.0;
    std::size_t checked_until = t0;
    for (std::size_t t = t0; t < traj.distance_to_limit.size(); ++t) {
        const double envelope = std::pow(r, static_cast<double>(t)) * d0;
        if (slack * envelope < resolution) {
            break;
        }
        worst_ratio = std::max(worst_ratio, traj.distance_to_limit[t] / envelope);
        checked_until = t;
    }
    return {id, "decay envelope at " + label(spec), worst_ratio <= slack,
            "interior modulus " + sci(r) + ", max distance(t)/(r^t distance(0)) = " + sci(worst_ratio) +
                " over t in [" + std::to_string(t0) + "," + std::to_string(checked_until) + "]",
            "<= " + sci(slack)};
}

std::vector<CriterionResult> verify_all(const WalkSpec& spec, Rng& rng, std::size_t max_t) {
    const std::vector<WalkSpec> one{spec};
    return {
        peripheral_spectrum(spec.n % 2 ? "1" : "2", one),
        eigen_pair_equivalence("3", one, rng),
        limit_state_convergence(spec.n % 2 ? "4" : "5", spec, rng, max_t),
        position_limits("6", spec, max_t),
        mutual_info_collapse("7", spec, max_t),
        channel_certification("8", one),
        contractivity("9", spec, rng),
        adjoint_duality("10", spec, rng),
        superoperator_oracle("11", one, rng),
        decay_envelope("12", spec, max_t),
    };
}

} // namespace dqwalk::verify
