#pragma once

#include <complex>

#include <Eigen/Dense>

namespace gcdd {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using cplx = std::complex<double>;

// Eigendecomposition of a Hermitian matrix: H = V diag(w) V^dagger with w
// ascending and deterministic eigenvector phases (largest-magnitude component
// of each column made real and positive; exact ties broken lexicographically).
struct Eigensystem {
    RealVector values;
    Matrix vectors;
};

// Frobenius-norm Hermiticity defect ||M - M^dagger||_F.
double hermiticity_defect(const Matrix& M);

// Throws std::invalid_argument if M is not Hermitian within
// 1e-12 * max(1, ||M||_F) or contains non-finite entries.
void require_hermitian(const Matrix& M, const char* context);

// Cyclic complex Jacobi iteration; robust for the small dimensions used here.
// Iteration cap 100 sweeps, off-diagonal threshold 1e-14 * ||H||_F.
Eigensystem eig_hermitian(const Matrix& H);

// V diag(exp(scale * w)) V^dagger. Unitary when scale is purely imaginary.
Matrix expm_hermitian(const Matrix& H, cplx scale);

// Hermitian square root of a positive-semidefinite matrix. Eigenvalues in
// [-clamp_tol * max(1, ||H||_F), 0) are treated as round-off and clamped to
// zero; anything below that bound raises std::invalid_argument.
Matrix sqrtm_psd(const Matrix& H, double clamp_tol = 1e-9);

// Uhlmann fidelity [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2. When either input
// is rank-1 (largest eigenvalue >= 1 - 1e-10) the pure-state shortcut
// <psi|other|psi> is used. Inputs are validated as density matrices within
// the operating tolerances of the integrator (trace 1e-6, Hermiticity 1e-8,
// eigenvalues >= -1e-7 * scale).
double fidelity(const Matrix& rho, const Matrix& sigma);

}  // namespace gcdd
