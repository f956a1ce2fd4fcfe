#include <random>

#include "doctest.h"
#include "gcdd/frame.hpp"
#include "gcdd/gates.hpp"
#include "gcdd/linalg.hpp"
#include "oracles.hpp"

using namespace gcdd;
using oracles::cubic_hermitian_eigs;
using oracles::expm_taylor;
using oracles::random_general;
using oracles::random_hermitian;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

TEST_CASE("build_frame: qutrit frequencies and traces") {
    QuditFrame f = build_frame(3, kTwoPi);
    CHECK(f.t0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.omega_d == doctest::Approx(3.0 * kTwoPi).epsilon(1e-14));
    CHECK(f.HL(0, 0).real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(f.HL(1, 1).real() == doctest::Approx(f.omega_d).epsilon(1e-14));
    CHECK(f.HL(2, 2).real() == doctest::Approx(2.0 * f.omega_d).epsilon(1e-14));
    CHECK(f.HL.trace().real() == doctest::Approx(9.0 * f.omega0).epsilon(1e-13));
    CHECK(f.HF.trace().real() == doctest::Approx(3.0 * f.omega0).epsilon(1e-13));
    CHECK(f.omega_r == doctest::Approx(-4.0 * f.omega0).epsilon(1e-13));

    // the Fourier-rotated level operator has the advertised spectrum
    auto w = cubic_hermitian_eigs(f.HF);
    CHECK(w[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(f.omega0).epsilon(1e-12));
    CHECK(w[2] == doctest::Approx(2.0 * f.omega0).epsilon(1e-12));
    // and its columns-of-F eigenvectors reproduce it exactly
    CHECK((f.HF * f.F.col(1) - f.omega0 * f.F.col(1)).norm() <= 1e-12 * f.omega0);
}

TEST_CASE("build_frame: d=2 rotating constant and general-d trace identity") {
    QuditFrame f2 = build_frame(2, 1.0);
    CHECK(f2.omega_r == doctest::Approx(-1.5).epsilon(1e-14));

    for (int d = 2; d <= 5; ++d) {
        QuditFrame f = build_frame(d, 0.83);
        CHECK(f.omega_r ==
              doctest::Approx(-(f.HL.trace().real() + f.HF.trace().real()) / d).epsilon(1e-13));
        CHECK(f.omega_r == doctest::Approx(-(d * d - 1) * f.omega0 / 2.0).epsilon(1e-13));
        // constant diagonal of the Fourier-rotated operator
        for (int k = 0; k < d; ++k)
            CHECK(f.HF(k, k).real() ==
                  doctest::Approx((d - 1) * f.omega0 / 2.0).epsilon(1e-12));
        CHECK((f.F.adjoint() * f.F - Matrix::Identity(d, d)).norm() <= 1e-12);
    }
    CHECK_THROWS_AS(build_frame(1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_frame(3, -1.0), std::invalid_argument);
}

TEST_CASE("control_unitary: unitarity, t=0, and factorized form") {
    QuditFrame f = build_frame(3, kTwoPi);
    CHECK((control_unitary(f, 0.0) - Matrix::Identity(3, 3)).norm() <= 1e-13);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ts(0.0, 3.0);
    for (int rep = 0; rep < 25; ++rep) {
        const double t = ts(rng);
        Matrix u = control_unitary(f, t);
        CHECK((u.adjoint() * u - Matrix::Identity(3, 3)).norm() <= 1e-10);
        // independent reconstruction from Taylor exponentials of the parts
        Matrix ref = std::exp(cplx(0.0, -f.omega_r * t)) *
                     (expm_taylor(f.HL, cplx(0.0, -t)) * expm_taylor(f.HF, cplx(0.0, -t)));
        CHECK((u - ref).norm() <= 1e-11 * std::max(1.0, ref.norm()));
    }
}

TEST_CASE("control_unitary: periodicity phase is +1 for odd d, -1 for even d") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> ts(0.0, 2.0);
    for (int d = 2; d <= 5; ++d) {
        QuditFrame f = build_frame(d, 1.3);
        const double phi = (d % 2 == 1) ? 1.0 : -1.0;
        CHECK((control_unitary(f, f.t0) - phi * Matrix::Identity(d, d)).norm() <= 1e-10);
        for (int rep = 0; rep < 5; ++rep) {
            const double t = ts(rng);
            CHECK((control_unitary(f, t + f.t0) - phi * control_unitary(f, t)).norm() <=
                  1e-9);
        }
    }
}

TEST_CASE("decoupling identity: period average strips the traceless part") {
    std::mt19937_64 rng(23);
    for (int d = 2; d <= 5; ++d) {
        QuditFrame f = build_frame(d, kTwoPi / 0.9);
        for (int rep = 0; rep < 6; ++rep) {
            Matrix a = rep % 2 == 0 ? random_hermitian(rng, d) : random_general(rng, d);
            CHECK(check_decoupling_identity(f, a, 2048) <= 1e-8);
        }
    }

    QuditFrame f3 = build_frame(3, kTwoPi);
    CHECK(check_decoupling_identity(f3, Matrix::Identity(3, 3), 2048) <= 1e-13);
    Matrix offdiag = Matrix::Zero(3, 3);  // traceless: average must vanish entirely
    offdiag(0, 1) = 1.0;
    CHECK(check_decoupling_identity(f3, offdiag, 2048) <= 1e-8);

    CHECK_THROWS_AS(check_decoupling_identity(f3, Matrix::Identity(2, 2), 2048),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_decoupling_identity(f3, Matrix::Identity(3, 3), 32),
                    std::invalid_argument);
}

TEST_CASE("control_hamiltonian: value at t=0, zero trace, generator property") {
    QuditFrame f = build_frame(3, kTwoPi);
    Matrix h0 = control_hamiltonian(f, 0.0);
    Matrix expected0 = f.omega_r * Matrix::Identity(3, 3) + f.HL + f.HF;
    CHECK((h0 - expected0).norm() <= 1e-12 * std::max(1.0, expected0.norm()));

    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> ts(0.0, 2.0);
    for (int rep = 0; rep < 10; ++rep) {
        Matrix hc = control_hamiltonian(f, ts(rng));
        CHECK(std::abs(hc.trace()) <= 1e-10 * std::max(1.0, hc.norm()));
        CHECK((hc - hc.adjoint()).norm() <= 1e-12 * std::max(1.0, hc.norm()));
    }

    // H_c is the generator of U_c: central difference i(dU_c/dt)U_c^dag
    auto fd_generator = [&](double t, double h) {
        Matrix dU = (control_unitary(f, t + h) - control_unitary(f, t - h)) / (2.0 * h);
        return Matrix(cplx(0.0, 1.0) * dU * control_unitary(f, t).adjoint());
    };
    const double t = f.t0 / 2.0;
    Matrix hc = control_hamiltonian(f, t);
    CHECK((fd_generator(t, 1e-6 * f.t0) - hc).norm() <= 1e-6);
    // second-order convergence of the central difference
    const double e1 = (fd_generator(t, 2e-4) - hc).norm();
    const double e2 = (fd_generator(t, 1e-4) - hc).norm();
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("make_gate_spec: shift bookkeeping and integrality guard") {
    QuditFrame f = build_frame(3, kTwoPi);
    NamedGate had = hadamard_qutrit(1.0);
    GateSpec spec = make_gate_spec(f, had.HG, had.tau);

    Eigensystem es = eig_hermitian(had.HG);
    CHECK(spec.g0 == doctest::Approx(es.values[2]).epsilon(1e-13));
    CHECK(spec.omega_g == doctest::Approx(spec.g0 + f.omega_r + 8.0 * f.omega0).epsilon(1e-13));
    CHECK((spec.G - (spec.g0 * Matrix::Identity(3, 3) - had.HG)).norm() <= 1e-13);
    Eigensystem eg = eig_hermitian(spec.G);
    CHECK(eg.values[0] >= -1e-10 * std::max(1.0, spec.G.norm()));

    // all eigenvalues negative -> g0 = 0 exactly
    Matrix neg = Matrix::Identity(3, 3) * -2.0;
    GateSpec negspec = make_gate_spec(f, neg, 1.0);
    CHECK(negspec.g0 == 0.0);

    CHECK_THROWS_WITH_AS(make_gate_spec(f, had.HG, 1.5),
                         doctest::Contains("integer multiple"), std::invalid_argument);
}

TEST_CASE("gate_hamiltonian_rotated: isospectral conjugation") {
    QuditFrame f = build_frame(3, kTwoPi);
    NamedGate had = hadamard_qutrit(1.0);
    GateSpec spec = make_gate_spec(f, had.HG, had.tau);

    CHECK((gate_hamiltonian_rotated(f, spec, 0.0) - had.HG).norm() <= 1e-12);
    auto w0 = cubic_hermitian_eigs(had.HG);
    for (double t : {0.37 * f.t0, 0.5, 0.91}) {
        Matrix hg = gate_hamiltonian_rotated(f, spec, t);
        CHECK((hg - hg.adjoint()).norm() <= 1e-12 * std::max(1.0, hg.norm()));
        CHECK(hg.trace().real() == doctest::Approx(had.HG.trace().real()).epsilon(1e-12));
        auto wt = cubic_hermitian_eigs(hg);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(wt[i] - w0[i]) <= 1e-10);
    }
}

TEST_CASE("lab_hamiltonian: assembled field equals shifted square of Upsilon") {
    QuditFrame f = build_frame(3, kTwoPi);
    NamedGate had = hadamard_qutrit(1.0);
    GateSpec spec = make_gate_spec(f, had.HG, had.tau);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ts(0.0, had.tau);
    for (int rep = 0; rep < 100; ++rep) {
        const double t = ts(rng);
        LabFields lf = lab_hamiltonian(f, spec, t);
        const double scale = std::max(1.0, lf.Hlab.norm());
        // the two independent assembly routes agree
        Matrix direct = gate_hamiltonian_rotated(f, spec, t) + control_hamiltonian(f, t);
        CHECK((lf.Hlab - direct).norm() <= 1e-10 * scale);
        CHECK((lf.Hlab - (spec.omega_g * Matrix::Identity(3, 3) - lf.Upsilon * lf.Upsilon))
                  .norm() <= 1e-9 * scale);
        CHECK((lf.Upsilon - lf.Upsilon.adjoint()).norm() <= 1e-11 * scale);
        Eigensystem es = eig_hermitian(lf.Upsilon);
        CHECK(es.values[0] >= -1e-9 * std::max(1.0, lf.Upsilon.norm()));
    }

    // t=0: everything is unrotated
    LabFields lf0 = lab_hamiltonian(f, spec, 0.0);
    Matrix expected0 = had.HG + f.omega_r * Matrix::Identity(3, 3) + f.HL + f.HF;
    CHECK((lf0.Hlab - expected0).norm() <= 1e-11 * std::max(1.0, expected0.norm()));
}

TEST_CASE("lab_hamiltonian: zero gate reduces to the control fields alone") {
    std::mt19937_64 rng(37);
    for (int d : {2, 3, 4}) {
        QuditFrame f = build_frame(d, kTwoPi);
        GateSpec spec = make_gate_spec(f, Matrix::Zero(d, d), 2.0 * f.t0);
        CHECK(spec.g0 == 0.0);

        std::uniform_real_distribution<double> ts(0.0, spec.tau);
        for (int rep = 0; rep < 10; ++rep) {
            const double t = ts(rng);
            LabFields lf = lab_hamiltonian(f, spec, t);
            Matrix hc = control_hamiltonian(f, t);
            CHECK((lf.Hlab - hc).norm() <= 1e-10 * std::max(1.0, hc.norm()));
        }

        // at t=0 the squared field operator is an explicit linear combination
        LabFields lf0 = lab_hamiltonian(f, spec, 0.0);
        Matrix vv = Matrix(lf0.Upsilon * lf0.Upsilon);
        Matrix expected = (d - 1) * (f.omega_d + f.omega0) * Matrix::Identity(d, d) -
                          f.HL - f.HF;
        CHECK((vv - expected).norm() <= 1e-9 * std::max(1.0, expected.norm()));
        Matrix lab0 = Matrix(spec.omega_g * Matrix::Identity(d, d) - vv);
        Matrix control0 = f.omega_r * Matrix::Identity(d, d) + f.HL + f.HF;
        CHECK((lab0 - control0).norm() <= 1e-9 * std::max(1.0, control0.norm()));
    }
}
