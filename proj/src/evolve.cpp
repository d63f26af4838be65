#include "dnls/evolve.hpp"

#include <cmath>
#include <stdexcept>

#include "dnls/conserved.hpp"
#include "dnls/fft.hpp"

namespace dnls {

namespace {

void mask_modes(const Grid& g, double kept, Cvec& hat) {
    if (kept <= 0 || kept >= 1) {
        if (kept <= 0) return;  // 0 disables
    }
    const int N = g.N;
    const int cut = static_cast<int>(std::floor(0.5 * kept * N));
    for (int j = 0; j < N; ++j) {
        const int m = j <= N / 2 ? j : j - N;
        if (std::abs(m) > cut) hat[j] = 0;
    }
}

struct StepPlan {
    double dt = 0;   // signed
    int n_steps = 0;
};

StepPlan plan_steps(const Grid& g, const EvolutionConfig& cfg) {
    const double T = cfg.t_end - cfg.t_start;
    if (T == 0) return {0.0, 0};
    const double dx2 = g.dx() * g.dx();
    double mag = cfg.dt > 0 ? std::min(cfg.dt, 0.5 * dx2) : 0.2 * dx2;
    StepPlan plan;
    plan.n_steps = std::max(1, static_cast<int>(std::ceil(std::abs(T) / mag)));
    plan.dt = T / plan.n_steps;
    return plan;
}

double l2_of_hat(const Grid& g, const Cvec& hat) {
    double s = 0;
    for (const auto& z : hat) s += std::norm(z);
    return std::sqrt(s * g.dx() / g.N);  // Parseval, unnormalized fft
}

}  // namespace

Trajectory evolve_u(const ComplexField& u0, const SolitonParams& p,
                    EvolutionConfig cfg) {
    const Grid& g = u0.grid;
    const int N = g.N;
    Fft fft(N);
    const Rvec k = g.k();

    const StepPlan plan = plan_steps(g, cfg);
    const double dt = plan.dt;
    const double s = p.sigma_eff();
    const double b = p.equation == Equation::DNLS_b ? p.b : 0.0;

    // integrating factor for u_t = i u_xx: hat' = -i k^2 hat
    Cvec E(N), E2(N);
    for (int j = 0; j < N; ++j) {
        E[j] = std::exp(-I * (k[j] * k[j]) * (0.5 * dt));
        E2[j] = E[j] * E[j];
    }
    Cvec ik(N);
    for (int j = 0; j < N; ++j)
        ik[j] = (j == N / 2) ? cplx{0, 0} : I * k[j];

    auto nl = [&](const Cvec& vhat) {
        Cvec vh = vhat, dh(N);
        mask_modes(g, cfg.dealias, vh);
        for (int j = 0; j < N; ++j) dh[j] = ik[j] * vh[j];
        const Cvec u = fft.inverse(vh);
        const Cvec ux = fft.inverse(dh);
        Cvec nlin(N);
        for (int j = 0; j < N; ++j) {
            const double M = std::norm(u[j]);
            nlin[j] = -std::pow(M, s) * ux[j];
            if (b != 0.0) nlin[j] += I * b * M * M * u[j];
        }
        Cvec out = fft.forward(nlin);
        mask_modes(g, cfg.dealias, out);
        return out;
    };

    Trajectory traj;
    traj.grid = g;
    Cvec vhat = fft.forward(u0.v);
    const double l2_0 = l2_of_hat(g, vhat);
    double sup0 = 0;
    for (const auto& z : u0.v) sup0 = std::max(sup0, std::abs(z));

    auto snapshot = [&](double t, const Cvec& hat) {
        const Cvec u = fft.inverse(hat);
        ComplexField f = make_field(g);
        f.v = u;
        LogRow row;
        row.t = t;
        row.mass = mass(f);
        row.energy = energy(f, p);
        row.momentum = momentum(f);
        row.sup = 0;
        for (const auto& z : u) row.sup = std::max(row.sup, std::abs(z));
        row.constraint = 0;
        traj.logs.push_back(row);
        traj.times.push_back(t);
        traj.states.push_back(u);
        return row.sup;
    };

    snapshot(cfg.t_start, vhat);

    for (int n = 0; n < plan.n_steps; ++n) {
        const Cvec a = nl(vhat);
        Cvec tmp(N);
        for (int j = 0; j < N; ++j) tmp[j] = E[j] * (vhat[j] + 0.5 * dt * a[j]);
        const Cvec bb = nl(tmp);
        for (int j = 0; j < N; ++j) tmp[j] = E[j] * vhat[j] + 0.5 * dt * bb[j];
        const Cvec cc = nl(tmp);
        for (int j = 0; j < N; ++j)
            tmp[j] = E2[j] * vhat[j] + dt * E[j] * cc[j];
        const Cvec dd = nl(tmp);
        for (int j = 0; j < N; ++j)
            vhat[j] = E2[j] * vhat[j] +
                      (dt / 6.0) * (E2[j] * a[j] + 2.0 * E[j] * (bb[j] + cc[j]) +
                                    dd[j]);

        const double t = cfg.t_start + (n + 1) * dt;
        const double l2 = l2_of_hat(g, vhat);
        const bool last = n + 1 == plan.n_steps;
        if (!std::isfinite(l2) || l2 > 1e3 * std::max(l2_0, 1e-300)) {
            traj.blew_up = true;
            traj.t_blowup = t;
            snapshot(t, vhat);
            return traj;
        }
        if (last || (cfg.log_every > 0 && (n + 1) % cfg.log_every == 0)) {
            const double sup = snapshot(t, vhat);
            if (!std::isfinite(sup) || sup > 1e3 * std::max(sup0, 1e-300)) {
                traj.blew_up = true;
                traj.t_blowup = t;
                return traj;
            }
        }
    }
    if (plan.n_steps == 0) return traj;
    return traj;
}

Trajectory evolve_gauge(const GaugePair& pair0, const SolitonParams& p,
                        EvolutionConfig cfg) {
    const Grid& g = pair0.phi.grid;
    const int N = g.N;
    Fft fft(N);
    const Rvec k = g.k();
    const double s = p.sigma_eff();

    const StepPlan plan = plan_steps(g, cfg);
    const double dt = plan.dt;

    Cvec E(N), E2(N), ik(N);
    for (int j = 0; j < N; ++j) {
        E[j] = std::exp(-I * (k[j] * k[j]) * (0.5 * dt));
        E2[j] = E[j] * E[j];
        ik[j] = (j == N / 2) ? cplx{0, 0} : I * k[j];
    }

    struct Hat2 {
        Cvec a, b;
    };
    // i phi_t + phi_xx = P, i psi_t + psi_xx = Q: the nonlinear part of the
    // time derivative is -iP, -iQ
    auto nl = [&](const Hat2& v) {
        Cvec va = v.a, vb = v.b;
        mask_modes(g, cfg.dealias, va);
        mask_modes(g, cfg.dealias, vb);
        GaugePair ph{make_field(g), make_field(g)};
        ph.phi.v = fft.inverse(va);
        ph.psi.v = fft.inverse(vb);
        const GaugeRhs rhs = gauge_nonlinearity(ph, p);
        Cvec na(N), nb(N);
        for (int j = 0; j < N; ++j) {
            na[j] = -I * rhs.P.v[j];
            nb[j] = -I * rhs.Q.v[j];
        }
        Hat2 out{fft.forward(na), fft.forward(nb)};
        mask_modes(g, cfg.dealias, out.a);
        mask_modes(g, cfg.dealias, out.b);
        return out;
    };

    Hat2 v{fft.forward(pair0.phi.v), fft.forward(pair0.psi.v)};
    const double l2_0 = l2_of_hat(g, v.a);

    Trajectory traj;
    traj.grid = g;

    auto reimpose = [&](Hat2& w) {
        const Cvec phi = fft.inverse(w.a);
        Cvec dphi(N);
        for (int j = 0; j < N; ++j) dphi[j] = ik[j] * w.a[j];
        const Cvec phix = fft.inverse(dphi);
        Cvec psi(N);
        for (int j = 0; j < N; ++j)
            psi[j] = phix[j] -
                     0.5 * I * std::pow(std::norm(phi[j]), s) * phi[j];
        w.b = fft.forward(psi);
    };

    auto snapshot = [&](double t, const Hat2& w) {
        GaugePair ph{make_field(g), make_field(g)};
        ph.phi.v = fft.inverse(w.a);
        ph.psi.v = fft.inverse(w.b);
        const ComplexField u = from_gauge(ph, p);
        LogRow row;
        row.t = t;
        row.mass = mass(u);
        row.energy = energy(u, p);
        row.momentum = momentum(u);
        row.sup = 0;
        for (const auto& z : u.v) row.sup = std::max(row.sup, std::abs(z));
        row.constraint = gauge_constraint_residual(ph, p);
        traj.logs.push_back(row);
        traj.times.push_back(t);
        traj.states.push_back(u.v);
        return row.sup;
    };

    snapshot(cfg.t_start, v);

    for (int n = 0; n < plan.n_steps; ++n) {
        const Hat2 a = nl(v);
        Hat2 tmp{Cvec(N), Cvec(N)};
        for (int j = 0; j < N; ++j) {
            tmp.a[j] = E[j] * (v.a[j] + 0.5 * dt * a.a[j]);
            tmp.b[j] = E[j] * (v.b[j] + 0.5 * dt * a.b[j]);
        }
        const Hat2 bb = nl(tmp);
        for (int j = 0; j < N; ++j) {
            tmp.a[j] = E[j] * v.a[j] + 0.5 * dt * bb.a[j];
            tmp.b[j] = E[j] * v.b[j] + 0.5 * dt * bb.b[j];
        }
        const Hat2 cc = nl(tmp);
        for (int j = 0; j < N; ++j) {
            tmp.a[j] = E2[j] * v.a[j] + dt * E[j] * cc.a[j];
            tmp.b[j] = E2[j] * v.b[j] + dt * E[j] * cc.b[j];
        }
        const Hat2 dd = nl(tmp);
        for (int j = 0; j < N; ++j) {
            v.a[j] = E2[j] * v.a[j] +
                     (dt / 6.0) * (E2[j] * a.a[j] +
                                   2.0 * E[j] * (bb.a[j] + cc.a[j]) + dd.a[j]);
            v.b[j] = E2[j] * v.b[j] +
                     (dt / 6.0) * (E2[j] * a.b[j] +
                                   2.0 * E[j] * (bb.b[j] + cc.b[j]) + dd.b[j]);
        }

        const double t = cfg.t_start + (n + 1) * dt;
        if (cfg.reimpose_every > 0 && (n + 1) % cfg.reimpose_every == 0 &&
            n + 1 != plan.n_steps)
            reimpose(v);

        const double l2 = l2_of_hat(g, v.a);
        const bool last = n + 1 == plan.n_steps;
        if (!std::isfinite(l2) || l2 > 1e3 * std::max(l2_0, 1e-300)) {
            traj.blew_up = true;
            traj.t_blowup = t;
            snapshot(t, v);
            return traj;
        }
        if (last || (cfg.log_every > 0 && (n + 1) % cfg.log_every == 0))
            snapshot(t, v);
    }
    return traj;
}

LinearTrajectory evolve_linearized(const PairField& Y0, const BlockOperator& op,
                                   double t_end, double dt, int store_every) {
    const int N = op.grid.N;
    if (op.complex_form)
        throw std::invalid_argument("evolve_linearized expects the real block form");

    const double kmax = M_PI * N / op.grid.L;
    const SolitonParams& p = op.params;
    // spectral radius estimate of L: stiffest mode k_max^2 plus transport
    const double est = kmax * kmax + std::abs(p.omega) +
                       (std::abs(p.c) + 8.0) * kmax + 8.0;
    double step = dt > 0 ? dt : 2.5 / est;
    if (step * est > 2.82)
        throw std::invalid_argument(
            "evolve_linearized: dt exceeds the RK4 imaginary-axis stability "
            "limit for this grid");
    const int n_steps =
        std::max(1, static_cast<int>(std::ceil(std::abs(t_end) / step)));
    const double h = t_end / n_steps;

    Eigen::VectorXcd y(2 * N);
    for (int j = 0; j < N; ++j) {
        y[j] = Y0.p[j];
        y[N + j] = Y0.m[j];
    }
    const Eigen::MatrixXd& A = op.A;
    auto rhs = [&](const Eigen::VectorXcd& w) {
        // d_t Y = -L Y, done in real arithmetic on the two parts
        Eigen::VectorXd re = w.real(), im = w.imag();
        Eigen::VectorXd fre = -(A * re), fim = -(A * im);
        Eigen::VectorXcd out(2 * N);
        out.real() = fre;
        out.imag() = fim;
        return out;
    };

    LinearTrajectory traj;
    auto store = [&](double t, const Eigen::VectorXcd& w) {
        PairField f = make_pair(op.grid);
        for (int j = 0; j < N; ++j) {
            f.p[j] = w[j];
            f.m[j] = w[N + j];
        }
        traj.times.push_back(t);
        traj.states.push_back(std::move(f));
    };
    store(0.0, y);

    for (int n = 0; n < n_steps; ++n) {
        const Eigen::VectorXcd k1 = rhs(y);
        const Eigen::VectorXcd k2 = rhs(y + 0.5 * h * k1);
        const Eigen::VectorXcd k3 = rhs(y + 0.5 * h * k2);
        const Eigen::VectorXcd k4 = rhs(y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (n + 1 == n_steps ||
            (store_every > 0 && (n + 1) % store_every == 0))
            store((n + 1) * h, y);
    }
    return traj;
}

}  // namespace dnls
