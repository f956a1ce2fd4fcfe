#include "gcdd/bath.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gcdd {

void validate_bath(const BathConfig& cfg, const char* context) {
    if (!(cfg.alpha >= 0.0))
        throw std::invalid_argument(std::string(context) + ": alpha must be non-negative");
    if (!(cfg.omega_c > 0.0))
        throw std::invalid_argument(std::string(context) + ": omega_c must be positive");
    if (!(cfg.beta > 0.0))
        throw std::invalid_argument(std::string(context) + ": beta must be positive");
    for (double lam : {cfg.lambda_damp_m1, cfg.lambda_damp_p1, cfg.lambda_deph_m1,
                       cfg.lambda_deph_p1})
        if (!std::isfinite(lam))
            throw std::invalid_argument(std::string(context) + ": coupling is not finite");
}

CouplingOperators coupling_operators(const BathConfig& cfg) {
    CouplingOperators ops;
    ops.Lambda1 = Matrix::Zero(3, 3);
    ops.Lambda1(1, 0) = cfg.lambda_damp_m1;  // |0><-1|
    ops.Lambda1(1, 2) = cfg.lambda_damp_p1;  // |0><+1|

    ops.Lambda2 = Matrix::Zero(3, 3);
    ops.Lambda2(0, 0) = cfg.lambda_deph_m1;
    ops.Lambda2(1, 1) = -(cfg.lambda_deph_m1 + cfg.lambda_deph_p1);
    ops.Lambda2(2, 2) = cfg.lambda_deph_p1;
    return ops;
}

double spectral_density(double omega, const BathConfig& cfg) {
    if (omega < 0.0)
        throw std::invalid_argument("spectral_density: omega must be non-negative");
    return cfg.alpha * cfg.alpha * omega * std::exp(-omega / cfg.omega_c);
}

double occupation(double omega, const BathConfig& cfg) {
    if (!(omega > 0.0))
        throw std::invalid_argument("occupation: omega must be positive");
    return 1.0 / std::expm1(cfg.beta * omega);
}

cplx inverse_square_tail(cplx a, double beta, long m) {
    // Euler-Maclaurin for f(x) = (a + x beta)^{-2}, Re(a) > 0, beta > 0:
    //   sum_{k>=m} f(k) = 1/(beta u) + 1/(2 u^2) + beta/(6 u^3)
    //                     - beta^3/(30 u^5) + beta^5/(42 u^7) + O((beta/u)^2 * last)
    // with u = a + m beta. |beta/u| <= 1/m, so m = 129 puts the remainder
    // below 1e-14 of the leading correction terms for every beta and lag.
    cplx u = a + static_cast<double>(m) * beta;
    cplx u2 = u * u;
    cplx u3 = u2 * u;
    cplx u5 = u3 * u2;
    cplx u7 = u5 * u2;
    double b3 = beta * beta * beta;
    double b5 = b3 * beta * beta;
    return 1.0 / (beta * u) + 0.5 / u2 + beta / (6.0 * u3) - b3 / (30.0 * u5)
         + b5 / (42.0 * u7);
}

namespace {

constexpr long kExplicitTerms = 128;

cplx thermal_series(cplx a, double beta) {
    cplx sum(0.0, 0.0);
    for (long k = 1; k <= kExplicitTerms; ++k) {
        cplx den = a + static_cast<double>(k) * beta;
        sum += 1.0 / (den * den);
    }
    return sum + inverse_square_tail(a, beta, kExplicitTerms + 1);
}

}  // namespace

cplx correlation_g1(double s, const BathConfig& cfg) {
    validate_bath(cfg, "correlation_g1");
    cplx a(1.0 / cfg.omega_c, s);
    return cfg.alpha * cfg.alpha * thermal_series(a, cfg.beta);
}

cplx correlation_g2(double s, const BathConfig& cfg) {
    validate_bath(cfg, "correlation_g2");
    cplx a(1.0 / cfg.omega_c, -s);
    cplx spontaneous = 1.0 / (a * a);
    return cfg.alpha * cfg.alpha * (spontaneous + thermal_series(a, cfg.beta));
}

}  // namespace gcdd
