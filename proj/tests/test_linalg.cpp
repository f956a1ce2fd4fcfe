#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "gcdd/gates.hpp"
#include "gcdd/linalg.hpp"
#include "oracles.hpp"

using namespace gcdd;
using oracles::cubic_hermitian_eigs;
using oracles::expm_taylor;
using oracles::random_density;
using oracles::random_general;
using oracles::random_hermitian;
using oracles::random_psd;
using oracles::random_pure;

namespace {
Matrix pure_density(const Vector& v) { return Matrix(v * v.adjoint()); }
}  // namespace

TEST_CASE("eig_hermitian handles constant and diagonal spectra") {
    Eigensystem es = eig_hermitian(Matrix::Identity(3, 3));
    for (int i = 0; i < 3; ++i) CHECK(es.values[i] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((es.vectors.adjoint() * es.vectors - Matrix::Identity(3, 3)).norm() <= 1e-12);

    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    es = eig_hermitian(d);
    CHECK(es.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(es.values[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(es.values[2] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(std::abs(es.vectors(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(es.vectors(2, 1)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(es.vectors(0, 2)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eig_hermitian round trip over random matrices, d = 2..6") {
    std::mt19937_64 rng(42);
    for (int d = 2; d <= 6; ++d) {
        for (int rep = 0; rep < 200; ++rep) {
            Matrix h = random_hermitian(rng, d);
            Eigensystem es = eig_hermitian(h);
            const double scale = std::max(1.0, h.norm());
            Matrix recon = es.vectors * es.values.cast<cplx>().asDiagonal() *
                           es.vectors.adjoint();
            REQUIRE((h - recon).norm() <= 1e-10 * scale);
            REQUIRE((es.vectors.adjoint() * es.vectors - Matrix::Identity(d, d)).norm() <=
                    1e-10);
            for (int i = 0; i + 1 < d; ++i) REQUIRE(es.values[i] <= es.values[i + 1]);
        }
    }
}

TEST_CASE("eig_hermitian matches characteristic-polynomial roots on 3x3") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 100; ++rep) {
        Matrix h = random_hermitian(rng, 3);
        Eigensystem es = eig_hermitian(h);
        auto w = cubic_hermitian_eigs(h);
        const double scale = std::max(1.0, h.norm());
        for (int i = 0; i < 3; ++i) CHECK(std::abs(es.values[i] - w[i]) <= 1e-10 * scale);
    }
    // the qutrit Hadamard generator as a concrete hard case
    Matrix hg = hadamard_qutrit(1.0).HG;
    Eigensystem es = eig_hermitian(hg);
    auto w = cubic_hermitian_eigs(hg);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(es.values[i] - w[i]) <= 1e-10);
}

TEST_CASE("eig_hermitian output is deterministic") {
    std::mt19937_64 rng(99);
    Matrix h = random_hermitian(rng, 4);
    Eigensystem a = eig_hermitian(h);
    Eigensystem b = eig_hermitian(h);
    CHECK(std::memcmp(a.values.data(), b.values.data(), sizeof(double) * 4) == 0);
    CHECK(std::memcmp(a.vectors.data(), b.vectors.data(), sizeof(cplx) * 16) == 0);
}

TEST_CASE("eig_hermitian handles degenerate spectra and rejects bad input") {
    Matrix proj = Matrix::Constant(3, 3, cplx(1.0 / 3.0, 0.0));  // rank-1 projector
    Eigensystem es = eig_hermitian(proj);
    CHECK(std::abs(es.values[0]) <= 1e-12);
    CHECK(std::abs(es.values[1]) <= 1e-12);
    CHECK(es.values[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((es.vectors.adjoint() * es.vectors - Matrix::Identity(3, 3)).norm() <= 1e-12);

    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = cplx(1.0, 0.0);
    CHECK_THROWS_AS(eig_hermitian(bad), std::invalid_argument);
}

TEST_CASE("expm_hermitian basics and unitarity") {
    CHECK((expm_hermitian(Matrix::Zero(3, 3), cplx(0.0, -2.5)) - Matrix::Identity(3, 3))
              .norm() <= 1e-14);

    const double t0 = 0.7;
    const double omega0 = 2.0 * M_PI / t0;
    Matrix h = Matrix::Zero(3, 3);
    h(1, 1) = omega0;
    h(2, 2) = 2.0 * omega0;
    CHECK((expm_hermitian(h, cplx(0.0, -t0)) - Matrix::Identity(3, 3)).norm() <= 1e-10);

    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 30; ++rep) {
        Matrix g = random_hermitian(rng, 3);
        Matrix u = expm_hermitian(g, cplx(0.0, -0.37));
        CHECK((u.adjoint() * u - Matrix::Identity(3, 3)).norm() <= 1e-10);
        CHECK((u * expm_hermitian(g, cplx(0.0, 0.37)) - Matrix::Identity(3, 3)).norm() <=
              1e-10);
    }
}

TEST_CASE("expm_hermitian matches Taylor summation for complex scales") {
    std::mt19937_64 rng(5);
    const cplx scales[] = {cplx(0.0, -0.37), cplx(0.2, 0.0), cplx(0.1, -0.3)};
    for (int rep = 0; rep < 50; ++rep) {
        const int d = 2 + rep % 4;
        Matrix h = random_hermitian(rng, d);
        for (cplx s : scales) {
            Matrix lib = expm_hermitian(h, s);
            Matrix ref = expm_taylor(h, s);
            CHECK((lib - ref).norm() <= 1e-12 * std::max(1.0, ref.norm()));
        }
    }
}

TEST_CASE("sqrtm_psd squares back and clamps round-off negativity") {
    CHECK((sqrtm_psd(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)).norm() <= 1e-13);

    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    d(2, 2) = 16.0;
    Matrix s = sqrtm_psd(d);
    CHECK(s(0, 0).real() == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(s(1, 1).real() == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(s(2, 2).real() == doctest::Approx(4.0).epsilon(1e-13));

    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        const int dim = 2 + rep % 5;
        Matrix x = random_psd(rng, dim);
        Matrix r = sqrtm_psd(x);
        CHECK((r - r.adjoint()).norm() <= 1e-12 * std::max(1.0, r.norm()));
        CHECK((r * r - x).norm() <= 1e-9 * std::max(1.0, x.norm()));
    }

    // a tiny negative eigenvalue within clamp_tol is flushed to zero
    Matrix tiny = Matrix::Zero(2, 2);
    tiny(0, 0) = -1e-12;
    tiny(1, 1) = 1.0;
    Matrix rt = sqrtm_psd(tiny);
    CHECK(rt(0, 0).real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rt(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));

    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = -0.1;
    neg(1, 1) = 1.0;
    CHECK_THROWS_WITH_AS(sqrtm_psd(neg), doctest::Contains("not non-negative"),
                         std::invalid_argument);
}

TEST_CASE("fidelity: exact values on known states") {
    Vector e0 = Vector::Zero(3);
    e0(0) = 1.0;
    Vector e1 = Vector::Zero(3);
    e1(1) = 1.0;
    CHECK(fidelity(pure_density(e0), pure_density(e0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(pure_density(e0), pure_density(e1)) <= 1e-12);

    Matrix mixed = Matrix::Identity(3, 3) / 3.0;
    CHECK(fidelity(mixed, pure_density(e0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("fidelity: pure-state shortcut agrees with the defining trace formula") {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 50; ++rep) {
        const int d = 2 + rep % 3;
        Matrix rho = random_density(rng, d);
        Vector psi = random_pure(rng, d);
        const double via_overlap = (psi.adjoint() * rho * psi)(0, 0).real();
        CHECK(fidelity(rho, pure_density(psi)) == doctest::Approx(via_overlap).epsilon(1e-9));
        CHECK(fidelity(pure_density(psi), rho) == doctest::Approx(via_overlap).epsilon(1e-9));
    }
}

TEST_CASE("fidelity: pure-pure overlap, symmetry, range, monotone mixing") {
    std::mt19937_64 rng(22);
    for (int rep = 0; rep < 30; ++rep) {
        Vector a = random_pure(rng, 3);
        Vector b = random_pure(rng, 3);
        const double overlap = std::norm((a.adjoint() * b)(0, 0));
        CHECK(fidelity(pure_density(a), pure_density(b)) ==
              doctest::Approx(overlap).epsilon(1e-9));
    }
    for (int rep = 0; rep < 20; ++rep) {
        Matrix rho = random_density(rng, 3);
        Matrix sig = random_density(rng, 3);
        const double f1 = fidelity(rho, sig);
        const double f2 = fidelity(sig, rho);
        CHECK(std::abs(f1 - f2) <= 1e-8);
        CHECK(f1 >= 0.0);
        CHECK(f1 <= 1.0 + 1e-9);
        CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-9));
    }
    // mixing rho toward sigma can only raise the fidelity with sigma
    for (int rep = 0; rep < 10; ++rep) {
        Matrix rho = random_density(rng, 3);
        Matrix sig = random_density(rng, 3);
        const double base = fidelity(rho, sig);
        for (double eps : {0.25, 0.5, 0.75, 1.0}) {
            Matrix mix = Matrix((1.0 - eps) * sig + eps * rho);
            CHECK(fidelity(mix, sig) >= base - 1e-10);
        }
    }
}

TEST_CASE("fidelity rejects non-density input") {
    Matrix not_normalized = Matrix::Identity(3, 3);  // trace 3
    CHECK_THROWS_AS(fidelity(not_normalized, Matrix::Identity(3, 3) / 3.0),
                    std::invalid_argument);
}
