#include "gcdd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcdd {

namespace {

double off_diagonal_norm(const Matrix& A) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            if (i != j) s += std::norm(A(i, j));
    return std::sqrt(s);
}

// Deterministic phase: rotate each column so its largest-magnitude entry is
// real and positive.
void canonicalize_phases(Matrix& V) {
    for (Eigen::Index c = 0; c < V.cols(); ++c) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < V.rows(); ++r) {
            double a = std::abs(V(r, c));
            if (a > best + 1e-15) {
                best = a;
                imax = r;
            }
        }
        cplx z = V(imax, c);
        if (std::abs(z) > 0.0) V.col(c) *= std::conj(z) / std::abs(z);
    }
}

bool column_less(const Matrix& V, Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index r = 0; r < V.rows(); ++r) {
        const cplx& x = V(r, a);
        const cplx& y = V(r, b);
        if (x.real() != y.real()) return x.real() < y.real();
        if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return false;
}

}  // namespace

double hermiticity_defect(const Matrix& M) {
    return (M - M.adjoint()).norm();
}

void require_hermitian(const Matrix& M, const char* context) {
    if (M.rows() != M.cols())
        throw std::invalid_argument(std::string(context) + ": matrix is not square");
    if (!M.allFinite())
        throw std::invalid_argument(std::string(context) + ": matrix has non-finite entries");
    double scale = std::max(1.0, M.norm());
    if (hermiticity_defect(M) > 1e-12 * scale)
        throw std::invalid_argument(std::string(context) + ": matrix is not Hermitian");
}

Eigensystem eig_hermitian(const Matrix& H) {
    require_hermitian(H, "eig_hermitian");
    const Eigen::Index d = H.rows();

    Matrix A = (H + H.adjoint()) / 2.0;  // scrub round-off skew
    Matrix V = Matrix::Identity(d, d);

    const double threshold = 1e-14 * std::max(1e-300, A.norm());
    const int max_sweeps = 100;
    bool converged = off_diagonal_norm(A) <= threshold;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (Eigen::Index p = 0; p < d - 1; ++p) {
            for (Eigen::Index q = p + 1; q < d; ++q) {
                cplx apq = A(p, q);
                double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                // Unitary 2x2 rotation R = [[c, -s e^{i phi}], [s e^{-i phi}, c]]
                // annihilating A(p,q); phase e^{i phi} = A(p,q)/|A(p,q)| and
                // tan(2 theta) = 2|A(p,q)| / (A(p,p) - A(q,q)).
                cplx phase = apq / mag;
                double u = (A(p, p).real() - A(q, q).real()) / (2.0 * mag);
                double t = (u >= 0.0) ? 1.0 / (u + std::sqrt(u * u + 1.0))
                                      : 1.0 / (u - std::sqrt(u * u + 1.0));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;

                Matrix R = Matrix::Identity(d, d);
                R(p, p) = c;
                R(p, q) = -s * phase;
                R(q, p) = s * std::conj(phase);
                R(q, q) = c;
                A = R.adjoint() * A * R;
                V = V * R;
            }
        }
        converged = off_diagonal_norm(A) <= threshold;
    }
    if (!converged)
        throw std::runtime_error("eig_hermitian: Jacobi iteration exceeded 100 sweeps");

    Eigensystem es;
    es.values = RealVector(d);
    for (Eigen::Index i = 0; i < d; ++i) es.values[i] = A(i, i).real();
    es.vectors = V;
    canonicalize_phases(es.vectors);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (es.values[a] != es.values[b]) return es.values[a] < es.values[b];
        return column_less(es.vectors, a, b);
    });

    Eigensystem out;
    out.values = RealVector(d);
    out.vectors = Matrix(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        out.values[i] = es.values[order[static_cast<std::size_t>(i)]];
        out.vectors.col(i) = es.vectors.col(order[static_cast<std::size_t>(i)]);
    }
    return out;
}

Matrix expm_hermitian(const Matrix& H, cplx scale) {
    Eigensystem es = eig_hermitian(H);
    Vector phases(es.values.size());
    for (Eigen::Index i = 0; i < es.values.size(); ++i)
        phases[i] = std::exp(scale * es.values[i]);
    return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

Matrix sqrtm_psd(const Matrix& H, double clamp_tol) {
    Eigensystem es = eig_hermitian(H);
    double scale = std::max(1.0, H.norm());
    Vector roots(es.values.size());
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        double w = es.values[i];
        if (w < -clamp_tol * scale)
            throw std::invalid_argument("sqrtm_psd: operator not non-negative");
        roots[i] = std::sqrt(std::max(0.0, w));
    }
    Matrix S = es.vectors * roots.asDiagonal() * es.vectors.adjoint();
    return (S + S.adjoint()) / 2.0;
}

namespace {

void require_density_matrix(const Matrix& rho, const char* context) {
    if (!rho.allFinite())
        throw std::invalid_argument(std::string(context) + ": non-finite entries");
    if (hermiticity_defect(rho) > 1e-8)
        throw std::invalid_argument(std::string(context) + ": not Hermitian");
    if (std::abs(rho.trace() - cplx(1.0, 0.0)) > 1e-6)
        throw std::invalid_argument(std::string(context) + ": trace differs from 1");
}

}  // namespace

double fidelity(const Matrix& rho, const Matrix& sigma) {
    require_density_matrix(rho, "fidelity(rho)");
    require_density_matrix(sigma, "fidelity(sigma)");

    Eigensystem er = eig_hermitian((rho + rho.adjoint()) / 2.0);
    Eigensystem es = eig_hermitian((sigma + sigma.adjoint()) / 2.0);
    double scale = std::max(1.0, std::max(rho.norm(), sigma.norm()));
    if (er.values.minCoeff() < -1e-7 * scale || es.values.minCoeff() < -1e-7 * scale)
        throw std::invalid_argument("fidelity: input is not positive semidefinite");

    const Eigen::Index d = rho.rows();
    // Rank-1 shortcut: better conditioned and the common case for pure targets.
    if (es.values[d - 1] >= 1.0 - 1e-10) {
        Vector psi = es.vectors.col(d - 1);
        double f = (psi.adjoint() * rho * psi)(0, 0).real();
        return std::clamp(f, 0.0, 1.0 + 1e-9);
    }
    if (er.values[d - 1] >= 1.0 - 1e-10) {
        Vector psi = er.vectors.col(d - 1);
        double f = (psi.adjoint() * sigma * psi)(0, 0).real();
        return std::clamp(f, 0.0, 1.0 + 1e-9);
    }

    // General route: clamp round-off negatives, then [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2.
    Vector roots(d);
    for (Eigen::Index i = 0; i < d; ++i)
        roots[i] = std::sqrt(std::max(0.0, er.values[i]));
    Matrix sqrt_rho = er.vectors * roots.asDiagonal() * er.vectors.adjoint();
    Matrix inner = sqrt_rho * sigma * sqrt_rho;
    Eigensystem ei = eig_hermitian((inner + inner.adjoint()) / 2.0);
    double tr = 0.0;
    for (Eigen::Index i = 0; i < d; ++i)
        tr += std::sqrt(std::max(0.0, ei.values[i]));
    return std::clamp(tr * tr, 0.0, 1.0 + 1e-9);
}

}  // namespace gcdd
