#pragma once

#include "gcdd/linalg.hpp"

namespace gcdd {

// Continuous-decoupling frame for a d-level system. The control unitary
//   U_c(t) = exp(-i omega_r t) exp(-i H_L t) exp(-i H_F t)
// is built from two fixed Hermitian generators: H_L, diagonal in the logical
// basis with spectrum {k * omega_d}, and H_F, diagonal in the discrete-Fourier
// basis with spectrum {n * omega0}. omega_r removes the total trace so that
// the period-average of U_c^dagger A U_c is Tr(A)/d * I for every A.
// Units: hbar = 1, all frequencies angular.
struct QuditFrame {
    int d = 0;
    double omega0 = 0.0;   // base control frequency, 2*pi / t0
    double t0 = 0.0;       // control period
    double omega_d = 0.0;  // = d * omega0
    double omega_r = 0.0;  // = -(Tr H_L + Tr H_F) / d
    Matrix HL;             // logical-basis generator (diagonal)
    Matrix HF;             // Fourier-basis generator (dense in logical basis)
    Matrix F;              // unitary Fourier matrix, F(j,n) = e^{2 pi i j n / d}/sqrt(d)
};

QuditFrame build_frame(int d, double omega0);

Matrix control_unitary(const QuditFrame& frame, double t);

// Max deviation ||(1/t0) int_0^t0 U_c^dagger A U_c dt - Tr(A)/d * I||_F,
// integrated by composite Simpson with n_quad panels (odd n_quad is bumped
// up by one).
double check_decoupling_identity(const QuditFrame& frame, const Matrix& A, int n_quad);

// Generator of U_c: H_c(t) = omega_r I + H_L + U_L(t) H_F U_L(t)^dagger with
// U_L(t) = exp(-i H_L t). Traceless by construction.
Matrix control_hamiltonian(const QuditFrame& frame, double t);

// Target gate generator H_G split into a non-negative part: H_G = g0 I - G
// with g0 the largest positive eigenvalue of H_G (0 if none), G >= 0.
// omega_g = g0 + omega_r + (d^2 - 1) omega0 is the constant shift that makes
// the laboratory Hamiltonian expressible as omega_g I - Upsilon^2.
struct GateSpec {
    Matrix HG;
    double tau = 0.0;
    double g0 = 0.0;
    Matrix G;
    double omega_g = 0.0;
};

// Validates Hermiticity of HG and that tau is an integer multiple of the
// frame's control period (relative tolerance 1e-9).
GateSpec make_gate_spec(const QuditFrame& frame, const Matrix& HG, double tau);

// Gate generator carried into the rotating frame: U_c(t) H_G U_c(t)^dagger.
Matrix gate_hamiltonian_rotated(const QuditFrame& frame, const GateSpec& gate, double t);

// Laboratory-frame control fields. Hlab(t) = U_c H_G U_c^dagger + H_c(t), and
// its non-negative factorization Hlab = omega_g I - Upsilon^2 with
// Upsilon = sqrt(HL' + U_L HF' U_L^dagger + U_c G U_c^dagger),
// HL' = (d-1) omega_d I - H_L, HF' = (d-1) omega0 I - H_F (both >= 0).
struct LabFields {
    Matrix Hlab;
    Matrix Upsilon;
};

LabFields lab_hamiltonian(const QuditFrame& frame, const GateSpec& gate, double t);

}  // namespace gcdd
