#pragma once

#include "gcdd/linalg.hpp"

namespace gcdd {

// Two independent, statistically identical thermal bosonic baths with Ohmic
// spectral density J(omega) = alpha^2 omega exp(-omega/omega_c). The coupling
// operators carry the lambda weights; alpha lives in J (only the product
// alpha * lambda is physical). Units: hbar = k_B = 1.
struct BathConfig {
    double lambda_damp_m1 = 1.0;  // |0><-1| weight of the damping coupling
    double lambda_damp_p1 = 1.0;  // |0><+1| weight of the damping coupling
    double lambda_deph_m1 = 1.0;  // (|-1><-1| - |0><0|) weight of the dephasing coupling
    double lambda_deph_p1 = 1.0;  // (|+1><+1| - |0><0|) weight of the dephasing coupling
    double alpha = 0.1;           // dimensionless prefactor in J
    double omega_c = 1.0;         // cutoff (angular frequency)
    double beta = 1.0;            // inverse temperature
};

void validate_bath(const BathConfig& cfg, const char* context);

// System-side coupling operators in the basis {|-1>, |0>, |1>}.
// Lambda1 (damping) is non-Hermitian; Lambda2 (dephasing) is diagonal and
// traceless by construction.
struct CouplingOperators {
    Matrix Lambda1;
    Matrix Lambda2;
};

CouplingOperators coupling_operators(const BathConfig& cfg);

double spectral_density(double omega, const BathConfig& cfg);

// Thermal occupation 1/(exp(beta omega) - 1); the omega -> 0 singularity is
// integrable and handled inside the correlation integrals, not here.
double occupation(double omega, const BathConfig& cfg);

// Correlation kernels
//   G1(s) = int_0^inf J(w) n(w) e^{-i w s} dw
//         = alpha^2 sum_{k>=1} (1/omega_c + k beta + i s)^{-2}
//   G2(s) = int_0^inf J(w) (1 + n(w)) e^{+i w s} dw
//         = alpha^2 [ (1/omega_c - i s)^{-2} + sum_{k>=1} (1/omega_c + k beta - i s)^{-2} ]
// evaluated as 128 explicit terms plus an Euler-Maclaurin tail completion of
// the remaining sum (remainder below 1e-14 relative uniformly in beta and s;
// a literal term-by-term cutoff cannot reach that at large |s| because the
// terms only decay like k^-2).
cplx correlation_g1(double s, const BathConfig& cfg);
cplx correlation_g2(double s, const BathConfig& cfg);

// Tail sum_{k>=m} (a + k beta)^{-2} by Euler-Maclaurin; exposed for the
// telescoping consistency tests.
cplx inverse_square_tail(cplx a, double beta, long m);

}  // namespace gcdd
