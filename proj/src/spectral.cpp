#include "dqwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dqwalk {

namespace {

constexpr double kClusterTol = 1e-6;
constexpr double kUnitModulusTol = 1e-9;

void fix_phase(ComplexMatrix& x) {
    const double scale = x.norm();
    if (scale == 0.0) {
        return;
    }
    const double floor = 1e-8 * scale;
    Complex pivot(0.0);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        if (std::abs(x(i, i)) > floor) {
            pivot = x(i, i);
            break;
        }
    }
    if (pivot == Complex(0.0)) {
        // Purely off-diagonal eigenmatrix: fall back to the first nonzero entry in column-major order.
        for (Eigen::Index k = 0; k < x.size(); ++k) {
            if (std::abs(x.data()[k]) > floor) {
                pivot = x.data()[k];
                break;
            }
        }
    }
    if (pivot != Complex(0.0)) {
        x *= std::conj(pivot) / std::abs(pivot);
    }
}

SpectralPair make_pair(const Superoperator& s, Complex value, const ComplexVector& v) {
    ComplexMatrix x = unvec(v / v.norm(), s.dim);
    fix_phase(x);
    const double residual = (s.apply(x) - value * x).norm() / x.norm();
    return {value, std::move(x), residual};
}

} // namespace

ComplexVector vec(const ComplexMatrix& x) {
    return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index n) {
    if (v.size() != n * n) {
        throw ValidationError("unvec: vector length is not n^2");
    }
    return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& x) const {
    if (x.rows() != dim || x.cols() != dim) {
        throw ValidationError("superoperator applied to operator of wrong dimension");
    }
    return unvec(mat * vec(x), dim);
}

Superoperator matricize(const QuantumOperation& op) {
    const Eigen::Index n = op.dim();
    ComplexMatrix m = ComplexMatrix::Zero(n * n, n * n);
    for (const auto& a : op.kraus()) {
        m += kron(a.conjugate(), a);
    }
    return {n, std::move(m)};
}

Superoperator matricize(const Gro& g) {
    const Eigen::Index n = g.dim();
    ComplexMatrix m = ComplexMatrix::Zero(n * n, n * n);
    for (const auto& w : g.unitaries()) {
        m += w.p * kron(w.u.conjugate(), w.u);
    }
    if (g.q() > 0.0) {
        m += g.q() * matricize(g.noise()).mat;
    }
    return {n, std::move(m)};
}

Gro adjoint(const Gro& g) {
    std::vector<WeightedUnitary> us;
    for (const auto& w : g.unitaries()) {
        us.push_back({w.p, w.u.adjoint()});
    }
    std::vector<ComplexMatrix> noise;
    for (const auto& a : g.noise().kraus()) {
        noise.push_back(a.adjoint());
    }
    return Gro(std::move(us), g.q(), QuantumOperation(std::move(noise)));
}

Gro adjoint_channel(const WalkSpec& spec) { return adjoint(build_channel(spec)); }

double spectral_radius(const Superoperator& s) {
    double r = 0.0;
    for (const auto& p : eig_general(s.mat)) {
        r = std::max(r, std::abs(p.value));
    }
    return r;
}

SpectralReport peripheral_spectrum(const Superoperator& s, double tol_peri) {
    auto pairs = eig_general(s.mat);
    SpectralReport report;
    report.tol_peri = tol_peri;

    std::vector<EigenPair<double>> peripheral;
    for (auto& p : pairs) {
        if (std::abs(p.value) >= 1.0 - tol_peri) {
            peripheral.push_back(std::move(p));
        } else {
            report.interior_max_modulus = std::max(report.interior_max_modulus, std::abs(p.value));
            report.interior.push_back(make_pair(s, p.value, p.vector));
        }
    }

    // Group numerically equal peripheral eigenvalues and orthonormalize each group.
    std::vector<bool> used(peripheral.size(), false);
    for (std::size_t i = 0; i < peripheral.size(); ++i) {
        if (used[i]) {
            continue;
        }
        std::vector<std::size_t> group{i};
        used[i] = true;
        for (std::size_t j = i + 1; j < peripheral.size(); ++j) {
            if (!used[j] && std::abs(peripheral[j].value - peripheral[i].value) <= kClusterTol) {
                group.push_back(j);
                used[j] = true;
            }
        }
        if (group.size() == 1) {
            report.peripheral.push_back(make_pair(s, peripheral[i].value, peripheral[i].vector));
            continue;
        }
        ComplexMatrix basis(s.mat.rows(), static_cast<Eigen::Index>(group.size()));
        for (std::size_t k = 0; k < group.size(); ++k) {
            basis.col(static_cast<Eigen::Index>(k)) = peripheral[group[k]].vector;
        }
        Eigen::HouseholderQR<ComplexMatrix> qr(basis);
        const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(basis.rows(), basis.cols());
        for (std::size_t k = 0; k < group.size(); ++k) {
            report.peripheral.push_back(make_pair(s, peripheral[group[k]].value, q.col(static_cast<Eigen::Index>(k))));
        }
    }
    std::sort(report.peripheral.begin(), report.peripheral.end(), [](const auto& a, const auto& b) {
        return a.value.real() > b.value.real() || (a.value.real() == b.value.real() && a.value.imag() > b.value.imag());
    });
    return report;
}

double proportionality_defect(const ComplexMatrix& x, const ComplexMatrix& target) {
    const Complex coeff = hs_inner(target, x) / hs_inner(target, target);
    return (x - coeff * target).norm() / x.norm();
}

StructureReport verify_eigenspace_structure(const SpectralReport& report, int n, double tol) {
    const Eigen::Index dim = 2 * static_cast<Eigen::Index>(n);
    const bool even = n % 2 == 0;
    std::ostringstream detail;
    const std::size_t expected = even ? 2 : 1;
    if (report.peripheral.size() != expected) {
        detail << "expected " << expected << " peripheral eigenvalue(s), found " << report.peripheral.size();
        return {false, std::numeric_limits<double>::infinity(), detail.str()};
    }

    struct Expectation {
        Complex value;
        ComplexMatrix target;
        const char* name;
    };
    std::vector<Expectation> expectations{{Complex(1.0), ComplexMatrix::Identity(dim, dim), "I"}};
    if (even) {
        expectations.push_back({Complex(-1.0), parity_operator(n), "I_pm1"});
    }

    double worst = 0.0;
    bool pass = true;
    for (const auto& e : expectations) {
        const auto it = std::min_element(report.peripheral.begin(), report.peripheral.end(),
                                         [&](const auto& a, const auto& b) {
                                             return std::abs(a.value - e.value) < std::abs(b.value - e.value);
                                         });
        const double value_dev = std::abs(it->value - e.value);
        const double shape_dev = proportionality_defect(it->eigenmatrix, e.target);
        worst = std::max({worst, value_dev, shape_dev});
        const bool ok = value_dev <= tol && shape_dev <= tol;
        pass = pass && ok;
        detail << "lambda=" << e.value.real() << ": eigenvalue deviation " << value_dev << ", eigenmatrix ~ " << e.name
               << " deviation " << shape_dev << (ok ? " [pass]" : " [FAIL]") << "\n";
    }
    return {pass, worst, detail.str()};
}

EigenPairReport check_eigen_pair_conditions(const Gro& g, const ComplexMatrix& x, Complex lambda, double tol) {
    if (std::abs(std::abs(lambda) - 1.0) > kUnitModulusTol) {
        std::ostringstream msg;
        msg << "check_eigen_pair_conditions: |lambda| = " << std::abs(lambda) << " is not on the unit circle";
        throw ValidationError(msg.str());
    }
    const double scale = x.norm();
    if (scale == 0.0) {
        throw ValidationError("check_eigen_pair_conditions: X must be nonzero");
    }
    const ComplexMatrix noise_out = apply_channel(g.noise(), x);
    double commutation = 0.0;
    double noise = 0.0;
    for (const auto& w : g.unitaries()) {
        commutation = std::max(commutation, (w.u * x - lambda * x * w.u).norm() / scale);
        noise = std::max(noise, (w.u * x * w.u.adjoint() - noise_out).norm() / scale);
    }
    const double eigen = (apply_gro(g, x) - lambda * x).norm() / scale;
    return {commutation <= tol && noise <= tol, eigen <= tol, commutation, noise, eigen};
}

CheckReport check_orthogonality(const SpectralReport& report, double tol) {
    double worst = 0.0;
    const auto& ps = report.peripheral;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            if (std::abs(ps[i].value - ps[j].value) <= kClusterTol) {
                continue;
            }
            worst = std::max(worst, std::abs(hs_inner(ps[i].eigenmatrix, ps[j].eigenmatrix)));
        }
    }
    return {worst <= tol, worst};
}

} // namespace dqwalk
