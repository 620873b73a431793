#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "dqwalk/linalg.hpp"
#include "dqwalk/random.hpp"

using namespace dqwalk;

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

std::vector<Complex> sorted_values(const std::vector<EigenPair<double>>& pairs) {
    std::vector<Complex> v;
    for (const auto& p : pairs) {
        v.push_back(p.value);
    }
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    return v;
}

} // namespace

TEST_CASE("hs_inner") {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    CHECK(std::abs(hs_inner(i2, i2) - Complex(2.0)) < 1e-15);

    const ComplexMatrix scaled = ComplexMatrix::Identity(4, 4) / std::sqrt(4.0);
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    rho(0, 0) = 1.0;
    CHECK(std::abs(hs_inner(scaled, rho) - Complex(0.5)) < 1e-15);

    CHECK(std::abs(hs_inner(mat2(0, 1, 0, 0), mat2(0, 0, 1, 0))) == 0.0);

    SUBCASE("conjugate-linear in the first argument") {
        Rng rng(1);
        const ComplexMatrix x = random_matrix(3, rng);
        const ComplexMatrix y = random_matrix(3, rng);
        const Complex a(0.3, -1.7);
        CHECK(std::abs(hs_inner((a * x).eval(), y) - std::conj(a) * hs_inner(x, y)) < 1e-12);
        CHECK(std::abs(hs_inner(x, y) - (x.adjoint() * y).trace()) < 1e-12);
    }

    CHECK_THROWS_AS(hs_inner(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)), ValidationError);
    CHECK_THROWS_AS(hs_inner(ComplexMatrix::Zero(2, 3), ComplexMatrix::Zero(2, 3)), ValidationError);
}

TEST_CASE("hs_norm") {
    // ||I_{2N}|| = sqrt(2N)
    CHECK(hs_norm(ComplexMatrix::Identity(4, 4)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(hs_norm(ComplexMatrix::Identity(8, 8)) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(hs_norm(ComplexMatrix::Zero(3, 3)) == 0.0);
    CHECK(hs_norm(mat2(3, 4, 0, 0)) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("kron") {
    CHECK(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)).isApprox(ComplexMatrix::Identity(4, 4)));

    const ComplexMatrix z = mat2(1, 0, 0, -1);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected.diagonal() << 1, 1, -1, -1;
    CHECK((kron(z, ComplexMatrix::Identity(2, 2)) - expected).norm() == 0.0);

    ComplexMatrix two(1, 1);
    two << 2.0;
    CHECK((kron(mat2(0, 1, 1, 0), two) - mat2(0, 2, 2, 0)).norm() == 0.0);

    SUBCASE("mixed-product property") {
        Rng rng(7);
        for (int trial = 0; trial < 10; ++trial) {
            const ComplexMatrix a = random_matrix(2, 3, rng);
            const ComplexMatrix b = random_matrix(3, 2, rng);
            const ComplexMatrix c = random_matrix(3, 2, rng);
            const ComplexMatrix d = random_matrix(2, 3, rng);
            const ComplexMatrix lhs = kron(a, b) * kron(c, d);
            const ComplexMatrix rhs = kron((a * c).eval(), (b * d).eval());
            CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
        }
    }
}

TEST_CASE("eig_hermitian") {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d.diagonal() << 3, 1, 2;
    const auto e = eig_hermitian(d);
    CHECK(e.values(0) == doctest::Approx(1.0));
    CHECK(e.values(1) == doctest::Approx(2.0));
    CHECK(e.values(2) == doctest::Approx(3.0));

    const auto x = eig_hermitian(mat2(0, 1, 1, 0));
    CHECK(x.values(0) == doctest::Approx(-1.0));
    CHECK(x.values(1) == doctest::Approx(1.0));

    const auto id = eig_hermitian(ComplexMatrix::Identity(5, 5));
    CHECK((id.values.array() - 1.0).abs().maxCoeff() < 1e-14);

    SUBCASE("decomposition contract on a random Hermitian matrix") {
        Rng rng(3);
        const ComplexMatrix h = random_hermitian(40, rng);
        const auto r = eig_hermitian(h);
        const ComplexMatrix lambda = r.values.cast<Complex>().asDiagonal();
        CHECK((h * r.vectors - r.vectors * lambda).norm() <= 1e-10 * h.norm());
        CHECK((r.vectors.adjoint() * r.vectors - ComplexMatrix::Identity(40, 40)).norm() <= 1e-10);
        CHECK(std::is_sorted(r.values.data(), r.values.data() + r.values.size()));
    }

    SUBCASE("non-Hermitian input names the tolerance") {
        try {
            eig_hermitian(mat2(0, 1, 0, 0));
            FAIL("expected ValidationError");
        } catch (const ValidationError& err) {
            CHECK(std::string(err.what()).find("tol_herm") != std::string::npos);
        }
    }
}

TEST_CASE("eig_general") {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d.diagonal() << 1, -1, 0.5;
    const auto vd = sorted_values(eig_general(d));
    CHECK(std::abs(vd[0] - Complex(-1)) < 1e-14);
    CHECK(std::abs(vd[1] - Complex(0.5)) < 1e-14);
    CHECK(std::abs(vd[2] - Complex(1)) < 1e-14);

    const auto nil = eig_general(mat2(0, 1, 0, 0));
    REQUIRE(nil.size() == 2);
    CHECK(std::abs(nil[0].value) < 1e-14);
    CHECK(std::abs(nil[1].value) < 1e-14);

    const auto rot = sorted_values(eig_general(mat2(0, -1, 1, 0)));
    CHECK(std::abs(rot[0] - Complex(0, -1)) < 1e-14);
    CHECK(std::abs(rot[1] - Complex(0, 1)) < 1e-14);

    SUBCASE("residual contract on a random matrix") {
        Rng rng(11);
        const ComplexMatrix m = random_matrix(120, rng);
        const auto pairs = eig_general(m);
        REQUIRE(pairs.size() == 120);
        for (const auto& p : pairs) {
            CHECK((m * p.vector - p.value * p.vector).norm() <= 1e-8 * m.norm());
        }
    }

    SUBCASE("agrees with eig_hermitian on Hermitian input") {
        Rng rng(12);
        const ComplexMatrix h = random_hermitian(30, rng);
        const auto general = sorted_values(eig_general(h));
        const auto herm = eig_hermitian(h);
        for (int i = 0; i < 30; ++i) {
            CHECK(std::abs(general[static_cast<std::size_t>(i)] - Complex(herm.values(i))) <= 1e-8);
        }
    }

    SUBCASE("iteration cap reports partial results") {
        Rng rng(13);
        const ComplexMatrix m = random_matrix(60, rng);
        try {
            eig_general(m, 1);
            FAIL("expected EigenSolverError");
        } catch (const EigenSolverError& err) {
            CHECK(err.partial_eigenvalues.size() == 60);
        }
    }

    CHECK_THROWS_AS(eig_general(ComplexMatrix::Zero(2, 3)), ValidationError);
}

TEST_CASE("norm invariants") {
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix x = random_matrix(6, rng);
        const Eigen::JacobiSVD<ComplexMatrix> svd(x);
        const double sum_sq = svd.singularValues().squaredNorm();
        CHECK(std::abs(hs_norm(x) * hs_norm(x) - sum_sq) <= 1e-12 * sum_sq);
        CHECK(std::abs(hs_inner(x, x).real() - sum_sq) <= 1e-12 * sum_sq);

        const ComplexMatrix u = random_unitary(6, rng);
        const ComplexMatrix rotated = u * x * u.adjoint();
        CHECK(std::abs(hs_norm(rotated) - hs_norm(x)) <= 1e-12 * hs_norm(x));
    }
}
