#include "gcdd/frame.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gcdd/gates.hpp"

namespace gcdd {

namespace {

constexpr double kPi = std::numbers::pi;

Vector logical_phases(const QuditFrame& frame, double t) {
    Vector ph(frame.d);
    for (int k = 0; k < frame.d; ++k)
        ph[k] = std::exp(cplx(0.0, -1.0) * (k * frame.omega_d * t));
    return ph;
}

Vector fourier_phases(const QuditFrame& frame, double t) {
    Vector ph(frame.d);
    for (int n = 0; n < frame.d; ++n)
        ph[n] = std::exp(cplx(0.0, -1.0) * (n * frame.omega0 * t));
    return ph;
}

}  // namespace

QuditFrame build_frame(int d, double omega0) {
    if (d < 2) throw std::invalid_argument("build_frame: d must be at least 2");
    if (!(omega0 > 0.0)) throw std::invalid_argument("build_frame: omega0 must be positive");

    QuditFrame frame;
    frame.d = d;
    frame.omega0 = omega0;
    frame.t0 = 2.0 * kPi / omega0;
    frame.omega_d = d * omega0;

    frame.HL = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) frame.HL(k, k) = k * frame.omega_d;

    frame.F = fourier_basis(d);
    Vector hf_diag(d);
    for (int n = 0; n < d; ++n) hf_diag[n] = n * omega0;
    frame.HF = frame.F * hf_diag.asDiagonal() * frame.F.adjoint();
    frame.HF = (frame.HF + frame.HF.adjoint()) / 2.0;

    double tr = frame.HL.trace().real() + frame.HF.trace().real();
    frame.omega_r = -tr / d;
    return frame;
}

Matrix control_unitary(const QuditFrame& frame, double t) {
    cplx global = std::exp(cplx(0.0, -1.0) * (frame.omega_r * t));
    Matrix UL = logical_phases(frame, t).asDiagonal();
    Matrix UF = frame.F * fourier_phases(frame, t).asDiagonal() * frame.F.adjoint();
    return global * (UL * UF);
}

double check_decoupling_identity(const QuditFrame& frame, const Matrix& A, int n_quad) {
    if (A.rows() != frame.d || A.cols() != frame.d)
        throw std::invalid_argument("check_decoupling_identity: A has wrong dimension");
    if (n_quad < 64)
        throw std::invalid_argument("check_decoupling_identity: n_quad must be at least 64");
    if (n_quad % 2 != 0) ++n_quad;  // Simpson needs an even panel count

    const double h = frame.t0 / n_quad;
    Matrix acc = Matrix::Zero(frame.d, frame.d);
    for (int i = 0; i <= n_quad; ++i) {
        double w = (i == 0 || i == n_quad) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        Matrix U = control_unitary(frame, i * h);
        acc += w * (U.adjoint() * A * U);
    }
    acc *= h / 3.0 / frame.t0;

    Matrix target = Matrix::Identity(frame.d, frame.d) * (A.trace() / cplx(frame.d));
    return (acc - target).norm();
}

Matrix control_hamiltonian(const QuditFrame& frame, double t) {
    Matrix UL = logical_phases(frame, t).asDiagonal();
    Matrix Hc = frame.omega_r * Matrix::Identity(frame.d, frame.d) + frame.HL
              + UL * frame.HF * UL.adjoint();
    return (Hc + Hc.adjoint()) / 2.0;
}

GateSpec make_gate_spec(const QuditFrame& frame, const Matrix& HG, double tau) {
    require_hermitian(HG, "make_gate_spec");
    if (HG.rows() != frame.d)
        throw std::invalid_argument("make_gate_spec: gate dimension does not match frame");
    if (!(tau > 0.0)) throw std::invalid_argument("make_gate_spec: tau must be positive");

    double ratio = tau / frame.t0;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument(
            "make_gate_spec: tau must be an integer multiple of the control period t0 "
            "(tau/t0 = " + std::to_string(ratio) + ")");

    GateSpec gate;
    gate.HG = HG;
    gate.tau = tau;
    Eigensystem es = eig_hermitian(HG);
    gate.g0 = std::max(0.0, es.values[frame.d - 1]);
    gate.G = gate.g0 * Matrix::Identity(frame.d, frame.d) - HG;
    gate.omega_g = gate.g0 + frame.omega_r + (frame.d * frame.d - 1) * frame.omega0;
    return gate;
}

Matrix gate_hamiltonian_rotated(const QuditFrame& frame, const GateSpec& gate, double t) {
    if (gate.HG.rows() != frame.d)
        throw std::invalid_argument("gate_hamiltonian_rotated: gate dimension mismatch");
    Matrix U = control_unitary(frame, t);
    Matrix H = U * gate.HG * U.adjoint();
    return (H + H.adjoint()) / 2.0;
}

LabFields lab_hamiltonian(const QuditFrame& frame, const GateSpec& gate, double t) {
    const int d = frame.d;
    Matrix UL = logical_phases(frame, t).asDiagonal();
    Matrix Uc = control_unitary(frame, t);

    LabFields out;
    out.Hlab = gate_hamiltonian_rotated(frame, gate, t) + control_hamiltonian(frame, t);

    Matrix HLp = (d - 1) * frame.omega_d * Matrix::Identity(d, d) - frame.HL;
    Matrix HFp = (d - 1) * frame.omega0 * Matrix::Identity(d, d) - frame.HF;
    Matrix V = HLp + UL * HFp * UL.adjoint() + Uc * gate.G * Uc.adjoint();
    V = (V + V.adjoint()) / 2.0;
    try {
        out.Upsilon = sqrtm_psd(V, 1e-9);
    } catch (const std::invalid_argument&) {
        throw std::runtime_error(
            "lab_hamiltonian: shifted field operator lost positivity (internal bug)");
    }
    return out;
}

}  // namespace gcdd
