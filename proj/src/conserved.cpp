#include "dnls/conserved.hpp"

#include <cmath>
#include <stdexcept>

#include "dnls/fft.hpp"
#include "dnls/linalg.hpp"
#include "dnls/operators.hpp"
#include "dnls/soliton.hpp"

namespace dnls {

double energy(const ComplexField& u, const SolitonParams& p) {
    const int N = u.grid.N;
    Fft fft(N);
    const Cvec ux = spectral_derivative(fft, u.grid, u.v, 1);
    const double s = p.sigma_eff();
    const double kappa = 1.0 / (2.0 * s + 2.0);
    double kin = 0, drift = 0, sext = 0;
    for (int j = 0; j < N; ++j) {
        const double M = std::norm(u.v[j]);
        kin += std::norm(ux[j]);
        drift += std::pow(M, s) * std::imag(ux[j] * std::conj(u.v[j]));
        sext += M * M * M;
    }
    double E = 0.5 * kin + kappa * drift;
    if (p.equation == Equation::DNLS_b) E -= (p.b / 6.0) * sext;
    return E * u.grid.dx();
}

double mass(const ComplexField& u) {
    double s = 0;
    for (const auto& z : u.v) s += std::norm(z);
    return 0.5 * s * u.grid.dx();
}

double momentum(const ComplexField& u) {
    const int N = u.grid.N;
    Fft fft(N);
    const Cvec ux = spectral_derivative(fft, u.grid, u.v, 1);
    double s = 0;
    for (int j = 0; j < N; ++j) s += std::imag(ux[j] * std::conj(u.v[j]));
    return -0.5 * s * u.grid.dx();
}

double action(const ComplexField& u, const SolitonParams& p) {
    return energy(u, p) + p.omega * mass(u) + p.c * momentum(u);
}

namespace {

// Q and P of the profile at freshly sized box; each parameter point gets its
// own grid so the finite differences are not polluted by a fixed-box tail.
void profile_qp(const SolitonParams& p, double& Q, double& P) {
    const Grid g = make_grid(suggested_box(p.h()), 2048);
    const ComplexField phi = soliton_profile(p, g);
    Q = mass(phi);
    P = momentum(phi);
}

bool admissible(SolitonParams q) {
    return validate_params(q).ok;
}

SolitonParams shifted(const SolitonParams& p, double dw, double dc) {
    SolitonParams q = p;
    q.omega += dw;
    q.c += dc;
    return q;
}

Eigen::Matrix2d qp_jacobian(const SolitonParams& p, double step) {
    double Qwp, Pwp, Qwm, Pwm, Qcp, Pcp, Qcm, Pcm;
    profile_qp(shifted(p, step, 0), Qwp, Pwp);
    profile_qp(shifted(p, -step, 0), Qwm, Pwm);
    profile_qp(shifted(p, 0, step), Qcp, Pcp);
    profile_qp(shifted(p, 0, -step), Qcm, Pcm);
    Eigen::Matrix2d d2;
    d2 << (Qwp - Qwm) / (2 * step), (Qcp - Qcm) / (2 * step),
          (Pwp - Pwm) / (2 * step), (Pcp - Pcm) / (2 * step);
    return d2;
}

}  // namespace

DMatrixResult d_matrix(const SolitonParams& p, double fd_step) {
    if (!validate_params(p).ok)
        throw std::invalid_argument(validate_params(p).message);
    double step = fd_step > 0
                      ? fd_step
                      : 1e-4 * std::max({1.0, std::abs(p.omega), std::abs(p.c)});
    int shrink = 0;
    while (shrink < 40 &&
           !(admissible(shifted(p, step, 0)) && admissible(shifted(p, -step, 0)) &&
             admissible(shifted(p, 0, step)) && admissible(shifted(p, 0, -step)))) {
        step *= 0.5;
        ++shrink;
    }
    if (shrink == 40)
        throw std::invalid_argument(
            "d_matrix: parameter point sits on the admissible boundary");

    const Eigen::Matrix2d full = qp_jacobian(p, step);
    const Eigen::Matrix2d half = qp_jacobian(p, 0.5 * step);
    // central differences have O(step^2) error: one Richardson sweep
    const Eigen::Matrix2d d2 = (4.0 * half - full) / 3.0;

    DMatrixResult res;
    res.d2 = d2;
    res.fd_step = step;
    {
        const Grid g = make_grid(suggested_box(p.h()), 2048);
        const ComplexField phi = soliton_profile(p, g);
        res.d = action(phi, p);
    }
    const Eigen::Matrix2d sym = 0.5 * (d2 + d2.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(sym);
    res.p_count = 0;
    const double scale = std::max(1.0, sym.norm());
    for (int i = 0; i < 2; ++i)
        if (es.eigenvalues()[i] > 1e-10 * scale) ++res.p_count;
    return res;
}

int n_of_H(const SolitonParams& p, const Grid& g) {
    const BlockOperator H = assemble_L(p, g, OperatorForm::H_form);
    const Eigen::MatrixXd sym = 0.5 * (H.A + H.A.transpose());
    const Eigen::VectorXd ev = eig_symmetric_values(sym);
    double scale = 0;
    for (double w : ev) scale = std::max(scale, std::abs(w));
    int near_zero = 0, negative = 0;
    for (double w : ev) {
        if (std::abs(w) < 1e-4 * scale) {
            ++near_zero;
            continue;
        }
        if (w < -1e-6 * scale) ++negative;
    }
    if (near_zero != 2)
        throw std::runtime_error(
            "n_of_H: kernel window holds " + std::to_string(near_zero) +
            " modes instead of 2; the grid does not resolve the symmetry kernel");
    return negative;
}

Verdict gss_classify(const StabilityReport& rep) {
    if (rep.degenerate) return Verdict::Inconclusive;
    if (rep.n_count == rep.p_count) return Verdict::Stable;
    if ((rep.n_count - rep.p_count) % 2 != 0) return Verdict::Unstable;
    return Verdict::Inconclusive;
}

StabilityReport make_stability_report(const SolitonParams& p, const Grid& g) {
    StabilityReport rep;
    const ComplexField phi = soliton_profile(p, g);
    rep.E = energy(phi, p);
    rep.Q = mass(phi);
    rep.P = momentum(phi);
    rep.S = action(phi, p);

    const DMatrixResult dm = d_matrix(p);
    rep.d = dm.d;
    rep.d2 = dm.d2;
    rep.p_count = dm.p_count;
    rep.fd_step = dm.fd_step;
    const Eigen::Matrix2d sym = 0.5 * (dm.d2 + dm.d2.transpose());
    rep.degenerate =
        std::abs(sym.determinant()) < 1e-6 * std::max(1.0, sym.norm() * sym.norm());

    rep.n_count = n_of_H(p, g);
    rep.verdict = gss_classify(rep);
    return rep;
}

}  // namespace dnls
