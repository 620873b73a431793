#include "doctest.h"

#include <cmath>

#include "dqwalk/random.hpp"
#include "dqwalk/spectral.hpp"

using namespace dqwalk;

namespace {

Gro unitary_only(const ComplexMatrix& u) {
    return Gro({{1.0, u}}, 0.0, QuantumOperation({ComplexMatrix::Identity(u.rows(), u.cols())}));
}

Gro walk(int n, double q) { return build_channel(WalkSpec(n, q, CoinOperator::hadamard())); }

} // namespace

TEST_CASE("vec convention") {
    Rng rng(1);
    const ComplexMatrix a = random_matrix(3, rng);
    const ComplexMatrix x = random_matrix(3, rng);
    const ComplexMatrix b = random_matrix(3, rng);
    const ComplexVector lhs = vec(a * x * b);
    const ComplexVector rhs = kron(b.transpose(), a) * vec(x);
    CHECK((lhs - rhs).norm() < 1e-12 * lhs.norm());
    CHECK((unvec(vec(x), 3) - x).norm() == 0.0);
    CHECK(vec(x)(1) == x(1, 0));
    CHECK_THROWS_AS(unvec(vec(x), 2), ValidationError);
}

TEST_CASE("matricize") {
    Rng rng(2);
    const auto id = matricize(unitary_only(ComplexMatrix::Identity(3, 3)));
    CHECK((id.mat - ComplexMatrix::Identity(9, 9)).norm() == 0.0);

    const ComplexMatrix u = random_unitary(3, rng);
    const auto su = matricize(unitary_only(u));
    CHECK((su.mat - kron(u.conjugate().eval(), u)).norm() < 1e-14);
    CHECK(unitarity_defect(su.mat) < 1e-12);

    SUBCASE("walk channel columns are images of matrix units") {
        const Gro g = walk(3, 0.3);
        const auto s = matricize(g);
        REQUIRE(s.mat.rows() == 36);
        ComplexMatrix unit = ComplexMatrix::Zero(6, 6);
        for (Eigen::Index col = 0; col < 6; ++col) {
            for (Eigen::Index row = 0; row < 6; ++row) {
                unit(row, col) = 1.0;
                CHECK((s.mat.col(col * 6 + row) - vec(apply_gro(g, unit))).norm() < 1e-15);
                unit(row, col) = 0.0;
            }
        }
    }

    SUBCASE("action agrees with direct application") {
        for (int n : {3, 4}) {
            const Gro g = walk(n, 0.3);
            const auto s = matricize(g);
            for (int k = 0; k < 20; ++k) {
                const DensityMatrix rho = random_density(2 * n, rng);
                CHECK((s.apply(rho.matrix()) - apply_gro(g, rho.matrix())).norm() < 1e-12);
            }
        }
    }

    SUBCASE("consistency witness on the identity") {
        const Gro g = walk(5, 0.4);
        const auto s = matricize(g);
        const ComplexMatrix i10 = ComplexMatrix::Identity(10, 10);
        CHECK((s.mat * vec(i10) - vec(apply_gro(g, i10))).norm() < 1e-12);
    }
}

TEST_CASE("adjoint channel") {
    Rng rng(3);
    const ComplexMatrix u = random_unitary(4, rng);
    const ComplexMatrix x = random_matrix(4, rng);
    CHECK((apply_gro(adjoint(unitary_only(u)), x) - u.adjoint() * x * u).norm() < 1e-12);

    const WalkSpec spec(4, 0.5, CoinOperator::hadamard());
    const Gro dual = adjoint_channel(spec);
    CHECK((apply_gro(dual, ComplexMatrix::Identity(8, 8)) - ComplexMatrix::Identity(8, 8)).norm() < 1e-14);

    const Gro g = build_channel(spec);
    for (int k = 0; k < 20; ++k) {
        const ComplexMatrix a = random_matrix(8, rng);
        const ComplexMatrix b = random_matrix(8, rng);
        CHECK(std::abs(hs_inner(apply_gro(dual, a), b) - hs_inner(a, apply_gro(g, b))) <= 1e-12 * a.norm() * b.norm());
    }
    CHECK((matricize(dual).mat - matricize(g).mat.adjoint()).norm() < 1e-14);
}

TEST_CASE("peripheral spectrum of the walk channel") {
    SUBCASE("odd N") {
        const auto report = peripheral_spectrum(matricize(walk(5, 0.25)));
        REQUIRE(report.peripheral.size() == 1);
        CHECK(std::abs(report.peripheral[0].value - Complex(1.0)) < 1e-10);
        CHECK(report.peripheral[0].residual < 1e-7);
        CHECK(report.interior_max_modulus < 1.0 - report.tol_peri);
        CHECK(report.interior.size() == 99);
        // Phase fixing: first diagonal entry real positive.
        CHECK(report.peripheral[0].eigenmatrix(0, 0).real() > 0.0);
        CHECK(std::abs(report.peripheral[0].eigenmatrix(0, 0).imag()) == 0.0);
    }
    SUBCASE("even N") {
        const auto report = peripheral_spectrum(matricize(walk(4, 0.25)));
        REQUIRE(report.peripheral.size() == 2);
        CHECK(std::abs(report.peripheral[0].value - Complex(1.0)) < 1e-10);
        CHECK(std::abs(report.peripheral[1].value - Complex(-1.0)) < 1e-10);
        for (const auto& p : report.peripheral) {
            CHECK(p.residual < 1e-7);
            CHECK(p.eigenmatrix.norm() == doctest::Approx(1.0));
        }
    }
    SUBCASE("dephasing mixed with identity has only eigenvalue 1 on the circle") {
        const double q = 0.4;
        const auto proj = build_projectors(3);
        const Gro g({{1.0 - q, ComplexMatrix::Identity(6, 6)}}, q, proj);
        const auto report = peripheral_spectrum(matricize(g));
        // Every diagonal matrix is fixed: eigenvalue 1 with multiplicity 6, nothing else peripheral.
        CHECK(report.peripheral.size() == 6);
        for (const auto& p : report.peripheral) {
            CHECK(std::abs(p.value - Complex(1.0)) < 1e-10);
            CHECK(p.residual < 1e-7);
        }
        // The repeated eigenspace is orthonormalized.
        for (std::size_t a = 0; a < report.peripheral.size(); ++a) {
            for (std::size_t b = a + 1; b < report.peripheral.size(); ++b) {
                CHECK(std::abs(hs_inner(report.peripheral[a].eigenmatrix, report.peripheral[b].eigenmatrix)) < 1e-10);
            }
        }
        CHECK(report.interior_max_modulus == doctest::Approx(1.0 - q));
        // Multiplicity above one fails the walk structure check instead of passing silently.
        CHECK_FALSE(verify_eigenspace_structure(report, 3).pass);
    }
}

TEST_CASE("eigenspace structure") {
    const auto r5 = peripheral_spectrum(matricize(walk(5, 0.25)));
    const auto s5 = verify_eigenspace_structure(r5, 5);
    CHECK(s5.pass);
    CHECK(proportionality_defect(r5.peripheral[0].eigenmatrix, ComplexMatrix::Identity(10, 10)) < 1e-10);

    const auto r4 = peripheral_spectrum(matricize(walk(4, 0.25)));
    const auto s4 = verify_eigenspace_structure(r4, 4);
    CHECK(s4.pass);
    CHECK(proportionality_defect(r4.peripheral[1].eigenmatrix, parity_operator(4)) < 1e-10);

    CHECK(verify_eigenspace_structure(peripheral_spectrum(matricize(walk(6, 0.25))), 6).pass);

    // An odd-N report read as an even-N one is missing lambda = -1.
    const auto mismatch = verify_eigenspace_structure(r5, 4);
    CHECK_FALSE(mismatch.pass);
    CHECK(mismatch.detail.find("expected 2") != std::string::npos);
}

TEST_CASE("eigen-pair conditions") {
    const Gro g5 = walk(5, 0.3);
    const auto id = check_eigen_pair_conditions(g5, ComplexMatrix::Identity(10, 10), 1.0);
    CHECK(id.forward_pass);
    CHECK(id.backward_pass);

    const Gro g4 = walk(4, 0.3);
    const auto par = check_eigen_pair_conditions(g4, parity_operator(4), -1.0);
    CHECK(par.forward_pass);
    CHECK(par.backward_pass);

    Rng rng(8);
    ComplexMatrix h = random_hermitian(10, rng);
    h -= (h.trace() / 10.0) * ComplexMatrix::Identity(10, 10);
    const auto rnd = check_eigen_pair_conditions(g5, h, 1.0);
    CHECK_FALSE(rnd.forward_pass);
    CHECK_FALSE(rnd.backward_pass);
    CHECK(std::max(rnd.commutation_residual, rnd.noise_residual) > 1e-3);

    CHECK_THROWS_AS(check_eigen_pair_conditions(g5, ComplexMatrix::Identity(10, 10), 0.5), ValidationError);
}

TEST_CASE("orthogonality") {
    const auto r4 = peripheral_spectrum(matricize(walk(4, 0.5)));
    CHECK(check_orthogonality(r4).pass);
    CHECK(std::abs(hs_inner(ComplexMatrix::Identity(8, 8), parity_operator(4))) == 0.0);
    CHECK(std::abs(hs_inner(ComplexMatrix::Identity(12, 12), parity_operator(6))) == 0.0);
    CHECK(check_orthogonality(peripheral_spectrum(matricize(walk(6, 0.5)))).pass);
    const auto r5 = check_orthogonality(peripheral_spectrum(matricize(walk(5, 0.5))));
    CHECK(r5.pass);
    CHECK(r5.residual == 0.0);
}

TEST_CASE("spectral invariants") {
    Rng rng(10);
    SUBCASE("spectral radius of bistochastic channels") {
        for (int k = 0; k < 5; ++k) {
            const Gro g({{0.3, random_unitary(6, rng)}, {0.3, random_unitary(6, rng)}}, 0.4, build_projectors(3));
            CHECK(spectral_radius(matricize(g)) <= 1.0 + 1e-9);
        }
        CHECK(spectral_radius(matricize(walk(4, 0.2))) <= 1.0 + 1e-9);
    }
    SUBCASE("peripheral eigenmatrices are orthogonal to interior eigenvectors") {
        for (int n : {4, 5}) {
            const auto report = peripheral_spectrum(matricize(walk(n, 0.3)));
            std::size_t checked = 0;
            for (const auto& inner : report.interior) {
                if (inner.residual > 1e-8) continue;
                ++checked;
                for (const auto& p : report.peripheral) {
                    CHECK(std::abs(hs_inner(p.eigenmatrix, inner.eigenmatrix)) <= 1e-7);
                }
            }
            CHECK(checked > 0);
        }
    }
    SUBCASE("adjoint acts on peripheral eigenmatrices by the conjugate eigenvalue") {
        for (int n : {4, 5, 6}) {
            const WalkSpec spec(n, 0.3, CoinOperator::hadamard());
            const Gro dual = adjoint_channel(spec);
            for (const auto& p : peripheral_spectrum(matricize(build_channel(spec))).peripheral) {
                CHECK((apply_gro(dual, p.eigenmatrix) - std::conj(p.value) * p.eigenmatrix).norm() <=
                      1e-7 * p.eigenmatrix.norm());
            }
        }
    }
}
