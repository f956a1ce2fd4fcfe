#include "gcdd/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gcdd {

namespace {
constexpr double kPi = std::numbers::pi;
}

Matrix fourier_basis(int d) {
    if (d < 2) throw std::invalid_argument("fourier_basis: d must be at least 2");
    Matrix F(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j)
        for (int n = 0; n < d; ++n)
            F(j, n) = norm * std::exp(cplx(0.0, 2.0 * kPi * j * n / d));
    return F;
}

NamedGate hadamard_qutrit(double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("hadamard_qutrit: tau must be positive");

    const double s3 = std::sqrt(3.0);
    const double pref = kPi / (4.0 * s3 * tau);
    Matrix HG(3, 3);
    HG << 4.0 * s3 - 2.0, -2.0, -2.0,
          -2.0, 2.0 * s3 + 1.0, 2.0 * s3 + 1.0,
          -2.0, 2.0 * s3 + 1.0, 2.0 * s3 + 1.0;
    HG *= pref;

    const cplx w = std::exp(cplx(0.0, 2.0 * kPi / 3.0));
    const cplx pre = 1.0 / (cplx(0.0, 1.0) * s3);  // 1/(i sqrt(3)) = -i/sqrt(3)
    Matrix UG(3, 3);
    UG << 1.0, 1.0, 1.0,
          1.0, w, w * w,
          1.0, w * w, w;
    UG *= pre;

    NamedGate gate;
    gate.name = "hadamard";
    gate.d = 3;
    gate.HG = HG;
    gate.UG = UG;
    gate.tau = tau;
    return gate;
}

NamedGate custom_gate(const std::string& name, const Matrix& HG, double tau) {
    require_hermitian(HG, "custom_gate");
    if (!(tau > 0.0)) throw std::invalid_argument("custom_gate: tau must be positive");

    NamedGate gate;
    gate.name = name;
    gate.d = static_cast<int>(HG.rows());
    gate.HG = HG;
    gate.UG = expm_hermitian(HG, cplx(0.0, -tau));
    gate.tau = tau;
    return gate;
}

}  // namespace gcdd
