#include "gcdd/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace gcdd {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<cplx> flatten(const Matrix& M) {
    return std::vector<cplx>(M.data(), M.data() + M.size());
}

using MatrixMap = Eigen::Map<const Matrix>;

// One bath's contribution to the right-hand side. M1/M2 are the accumulated
// history operators int G1(t-t') L^dag(t') dt' and int G2(t-t') L(t') dt'.
Matrix bath_terms(const Matrix& rho, const Matrix& L, const Matrix& Ldag,
                  const Matrix& M1, const Matrix& M2) {
    Matrix M1d = M1.adjoint();
    Matrix M2d = M2.adjoint();
    Matrix A = rho * M1;
    Matrix B = M1d * rho;
    Matrix C = rho * M2;
    Matrix D = M2d * rho;
    return (A * L - L * A) - (B * Ldag - Ldag * B) + (C * Ldag - Ldag * C)
         - (D * L - L * D);
}

}  // namespace

void validate_scenario(const Scenario& scn, const char* context) {
    const std::string ctx(context);
    const int d = scn.gate.d;
    if (d < 2) throw std::invalid_argument(ctx + ": gate dimension must be at least 2");
    if (!(scn.gate.tau > 0.0)) throw std::invalid_argument(ctx + ": gate time must be positive");
    if (scn.psi0.size() != d)
        throw std::invalid_argument(ctx + ": initial state dimension mismatch");
    if (std::abs(scn.psi0.norm() - 1.0) > 1e-12)
        throw std::invalid_argument(ctx + ": initial state is not normalized");
    if (scn.couplings.Lambda1.rows() != d || scn.couplings.Lambda2.rows() != d)
        throw std::invalid_argument(ctx + ": coupling operator dimension mismatch");
    validate_bath(scn.bath, context);
    if (scn.control_on) {
        if (!scn.frame) throw std::invalid_argument(ctx + ": control requires a frame");
        if (scn.frame->d != d)
            throw std::invalid_argument(ctx + ": frame dimension does not match gate");
        double ratio = scn.gate.tau / scn.frame->t0;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
            throw std::invalid_argument(
                ctx + ": tau must be an integer multiple of the control period t0");
    }
}

int required_steps(const Scenario& scn) {
    const int d = scn.gate.d;
    double fastest = scn.bath.omega_c;  // kernel varies on the correlation time
    if (scn.control_on && scn.frame)
        fastest = std::max(fastest, (d * d - 1) * scn.frame->omega0);
    Eigensystem eg = eig_hermitian(scn.gate.HG);
    fastest = std::max(fastest, eg.values[d - 1] - eg.values[0]);
    // 20 samples per fastest period
    int n = static_cast<int>(std::ceil(20.0 * scn.gate.tau * fastest / (2.0 * kPi) - 1e-9));
    return std::max(n, 100);
}

void validate_grid(const Scenario& scn, const SimulationGrid& grid, const char* context) {
    int need = required_steps(scn);
    if (grid.n_steps < need)
        throw std::invalid_argument(std::string(context) + ": grid too coarse, need n_steps >= "
                                    + std::to_string(need) + " (got "
                                    + std::to_string(grid.n_steps) + ")");
}

Matrix rotate_coupling(const Scenario& scn, double t, const Matrix& L) {
    Matrix U = expm_hermitian(scn.gate.HG, cplx(0.0, -t));
    if (scn.control_on) {
        if (!scn.frame) throw std::invalid_argument("rotate_coupling: control requires a frame");
        U = control_unitary(*scn.frame, t) * U;
    }
    return U.adjoint() * L * U;
}

Trajectory integrate(const Scenario& scn, const SimulationGrid& grid) {
    validate_scenario(scn, "integrate");
    validate_grid(scn, grid, "integrate");

    const int d = scn.gate.d;
    const int d2 = d * d;
    const int n = grid.n_steps;
    const double tau = scn.gate.tau;
    const double dt = tau / n;

    long window = n;
    if (grid.memory_window > 0.0)
        window = std::clamp(std::llround(grid.memory_window / dt), 1LL, (long long)n);

    const bool bath1_on = scn.bath.alpha > 0.0 && scn.couplings.Lambda1.norm() > 0.0;
    const bool bath2_on = scn.bath.alpha > 0.0 && scn.couplings.Lambda2.norm() > 0.0;
    const bool any_bath = bath1_on || bath2_on;

    // Rotated coupling samples at all nodes (and their adjoints), flattened
    // column-major for the memory accumulation.
    Eigensystem eg = eig_hermitian(scn.gate.HG);
    std::vector<std::vector<cplx>> L1(n + 1), L1a(n + 1), L2(n + 1), L2a(n + 1);
    if (any_bath) {
        for (int k = 0; k <= n; ++k) {
            double t = k * dt;
            Vector phases(d);
            for (int i = 0; i < d; ++i)
                phases[i] = std::exp(cplx(0.0, -eg.values[i] * t));
            Matrix U = eg.vectors * phases.asDiagonal() * eg.vectors.adjoint();
            if (scn.control_on) U = control_unitary(*scn.frame, t) * U;
            if (bath1_on) {
                Matrix R = U.adjoint() * scn.couplings.Lambda1 * U;
                L1[k] = flatten(R);
                L1a[k] = flatten(Matrix(R.adjoint()));
            }
            if (bath2_on) {
                Matrix R = U.adjoint() * scn.couplings.Lambda2 * U;
                L2[k] = flatten(R);
                L2a[k] = flatten(Matrix(R.adjoint()));
            }
        }
    }

    // Kernel tables over lag.
    std::vector<cplx> g1(n + 1), g2(n + 1);
    if (any_bath)
        for (int l = 0; l <= n; ++l) {
            g1[l] = correlation_g1(l * dt, scn.bath);
            g2[l] = correlation_g2(l * dt, scn.bath);
        }

    // Trapezoid accumulation of the history operators for one node.
    auto accumulate = [&](int k, const std::vector<std::vector<cplx>>& Lf,
                          const std::vector<std::vector<cplx>>& Lfa,
                          std::vector<cplx>& m1, std::vector<cplx>& m2) {
        std::fill(m1.begin(), m1.end(), cplx(0.0, 0.0));
        std::fill(m2.begin(), m2.end(), cplx(0.0, 0.0));
        if (k == 0) return;
        long j0 = std::max(0L, (long)k - window);
        for (long j = j0; j <= k; ++j) {
            double w = (j == j0 || j == k) ? 0.5 * dt : dt;
            cplx c1 = w * g1[k - j];
            cplx c2 = w * g2[k - j];
            const cplx* pa = Lfa[j].data();
            const cplx* pl = Lf[j].data();
            for (int i = 0; i < d2; ++i) {
                m1[i] += c1 * pa[i];
                m2[i] += c2 * pl[i];
            }
        }
    };

    std::vector<cplx> m11_cur(d2), m12_cur(d2), m21_cur(d2), m22_cur(d2);
    std::vector<cplx> m11_nxt(d2), m12_nxt(d2), m21_nxt(d2), m22_nxt(d2);

    auto rhs = [&](const Matrix& rho, int k, const std::vector<cplx>& m11,
                   const std::vector<cplx>& m12, const std::vector<cplx>& m21,
                   const std::vector<cplx>& m22) -> Matrix {
        Matrix out = Matrix::Zero(d, d);
        if (bath1_on) {
            MatrixMap L(L1[k].data(), d, d), Ldag(L1a[k].data(), d, d);
            MatrixMap M1(m11.data(), d, d), M2(m12.data(), d, d);
            out += bath_terms(rho, L, Ldag, M1, M2);
        }
        if (bath2_on) {
            MatrixMap L(L2[k].data(), d, d), Ldag(L2a[k].data(), d, d);
            MatrixMap M1(m21.data(), d, d), M2(m22.data(), d, d);
            out += bath_terms(rho, L, Ldag, M1, M2);
        }
        return -out;
    };

    Trajectory traj;
    traj.times.resize(n + 1);
    traj.rho.reserve(n + 1);
    traj.fidelity.resize(n + 1);
    traj.min_eigenvalue = 0.0;

    Matrix rho = scn.psi0 * scn.psi0.adjoint();
    const int monitor_stride = std::max(1, n / 1024);

    auto record = [&](int k, const Matrix& r) {
        traj.times[k] = k * dt;
        traj.rho.push_back(r);
        traj.fidelity[k] = (scn.psi0.adjoint() * r * scn.psi0)(0, 0).real();
        double tdev = std::abs(r.trace() - cplx(1.0, 0.0));
        traj.max_trace_dev = std::max(traj.max_trace_dev, tdev);
        traj.max_herm_defect = std::max(traj.max_herm_defect, hermiticity_defect(r));
        if (tdev > 1e-4)
            throw std::runtime_error(
                "integrate: trace drift " + std::to_string(tdev) + " at step "
                + std::to_string(k) + "; suggest n_steps >= " + std::to_string(2 * n));
        if (k % monitor_stride == 0 || k == n) {
            Eigensystem er = eig_hermitian((r + r.adjoint()) / 2.0);
            traj.min_eigenvalue = std::min(traj.min_eigenvalue, er.values[0]);
        }
    };

    record(0, rho);
    if (bath1_on) accumulate(0, L1, L1a, m11_cur, m12_cur);
    if (bath2_on) accumulate(0, L2, L2a, m21_cur, m22_cur);

    for (int k = 0; k < n; ++k) {
        if (any_bath) {
            if (bath1_on) accumulate(k + 1, L1, L1a, m11_nxt, m12_nxt);
            if (bath2_on) accumulate(k + 1, L2, L2a, m21_nxt, m22_nxt);
            Matrix f0 = rhs(rho, k, m11_cur, m12_cur, m21_cur, m22_cur);
            Matrix pred = rho + dt * f0;
            Matrix f1 = rhs(pred, k + 1, m11_nxt, m12_nxt, m21_nxt, m22_nxt);
            rho += (dt / 2.0) * (f0 + f1);
            m11_cur.swap(m11_nxt);
            m12_cur.swap(m12_nxt);
            m21_cur.swap(m21_nxt);
            m22_cur.swap(m22_nxt);
        }
        record(k + 1, rho);
    }

    traj.gate_fidelity = traj.fidelity.back();
    return traj;
}

std::vector<double> fidelity_trace(const Trajectory& traj, const Scenario& scn) {
    std::vector<double> out;
    out.reserve(traj.rho.size());
    for (const Matrix& r : traj.rho)
        out.push_back((scn.psi0.adjoint() * r * scn.psi0)(0, 0).real());
    return out;
}

SweepResult sweep_gate_fidelity(const Scenario& base, std::vector<int> n_values,
                                const SimulationGrid& grid, int jobs) {
    if (n_values.empty())
        throw std::invalid_argument("sweep_gate_fidelity: empty n list");
    std::sort(n_values.begin(), n_values.end());
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 1)
            throw std::invalid_argument("sweep_gate_fidelity: n values must be >= 1");
        if (i > 0 && n_values[i] == n_values[i - 1])
            throw std::invalid_argument("sweep_gate_fidelity: duplicate n value "
                                        + std::to_string(n_values[i]));
    }

    const int d = base.gate.d;
    std::vector<Scenario> runs;
    runs.reserve(n_values.size() + 1);
    Scenario unprot = base;
    unprot.control_on = false;
    unprot.frame.reset();
    runs.push_back(unprot);
    for (int nv : n_values) {
        Scenario s = base;
        s.control_on = true;
        // n control periods per bath correlation time: omega0 = n * omega_c.
        s.frame = build_frame(d, nv * base.bath.omega_c);
        runs.push_back(s);
    }
    for (const Scenario& s : runs) validate_grid(s, grid, "sweep_gate_fidelity");

    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::clamp(jobs, 1, static_cast<int>(runs.size()));

    std::vector<Trajectory> results(runs.size());
    std::vector<std::exception_ptr> errors(runs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= runs.size()) break;
            try {
                results[i] = integrate(runs[i], grid);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);

    SweepResult out;
    out.n_values = std::move(n_values);
    out.unprotected = std::move(results[0]);
    out.protected_runs.assign(std::make_move_iterator(results.begin() + 1),
                              std::make_move_iterator(results.end()));
    return out;
}

}  // namespace gcdd
