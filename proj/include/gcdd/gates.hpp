#pragma once

#include <string>

#include "gcdd/linalg.hpp"

namespace gcdd {

// Target gate described by its Hermitian generator and the unitary it
// produces after time tau: UG = exp(-i HG tau).
struct NamedGate {
    std::string name;
    int d = 0;
    Matrix HG;
    Matrix UG;
    double tau = 0.0;
};

// Unitary discrete-Fourier matrix, column n = (1/sqrt(d)) sum_j e^{2 pi i j n / d} |j>.
Matrix fourier_basis(int d);

// Qutrit Hadamard in the basis {|-1>, |0>, |1>}:
//   HG = pi/(4 sqrt(3) tau) * [[4 sqrt(3)-2, -2, -2],
//                              [-2, 2 sqrt(3)+1, 2 sqrt(3)+1],
//                              [-2, 2 sqrt(3)+1, 2 sqrt(3)+1]]
//   UG = 1/(i sqrt(3)) * [[1, 1, 1], [1, w, w^2], [1, w^2, w]], w = e^{2 pi i/3}.
NamedGate hadamard_qutrit(double tau);

// Wraps a user-supplied Hermitian generator; UG is computed by exponentiation.
NamedGate custom_gate(const std::string& name, const Matrix& HG, double tau);

}  // namespace gcdd
