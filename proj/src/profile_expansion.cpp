#include "dnls/profile_expansion.hpp"

#include <cmath>
#include <stdexcept>

#include "dnls/fft.hpp"
#include "dnls/soliton.hpp"

namespace dnls {

namespace {

double guarded_pow(double base, double e) {
    return std::pow(std::max(base, 1e-120), e);
}

// Co-moving right-hand side: u(t, x) = e^{i omega t} U(t, x - c t) solves the
// lab equation iff dU/dt = F(U).
Cvec comoving_rhs(const Fft& fft, const Grid& g, const Cvec& U,
                  const SolitonParams& p) {
    const int N = g.N;
    const double s = p.sigma_eff();
    const double b = p.equation == Equation::DNLS_b ? p.b : 0.0;
    const Cvec U1 = spectral_derivative(fft, g, U, 1);
    const Cvec U2 = spectral_derivative(fft, g, U, 2);
    Cvec F(N);
    for (int j = 0; j < N; ++j) {
        const double M = std::norm(U[j]);
        F[j] = I * U2[j] - I * p.omega * U[j] + p.c * U1[j] -
               std::pow(M, s) * U1[j];
        if (b != 0.0) F[j] += I * b * M * M * U[j];
    }
    return F;
}

// Frechet derivative of F at the profile, applied to u.
Cvec comoving_rhs_lin(const Fft& fft, const Grid& g, const Cvec& phi,
                      const Cvec& phi1, const Cvec& u, const SolitonParams& p) {
    const int N = g.N;
    const double s = p.sigma_eff();
    const double b = p.equation == Equation::DNLS_b ? p.b : 0.0;
    const Cvec u1 = spectral_derivative(fft, g, u, 1);
    const Cvec u2 = spectral_derivative(fft, g, u, 2);
    Cvec F(N);
    for (int j = 0; j < N; ++j) {
        const double M = std::norm(phi[j]);
        const double re = std::real(phi[j] * std::conj(u[j]));
        F[j] = I * u2[j] - I * p.omega * u[j] + p.c * u1[j] -
               std::pow(M, s) * u1[j] -
               2.0 * s * guarded_pow(M, s - 1.0) * re * phi1[j];
        if (b != 0.0)
            F[j] += I * b * (M * M * u[j] + 4.0 * M * re * phi[j]);
    }
    return F;
}

PairField axpy(double alpha, const PairField& x, const PairField& y) {
    PairField out = y;
    for (int j = 0; j < x.grid.N; ++j) {
        out.p[j] += alpha * x.p[j];
        out.m[j] += alpha * x.m[j];
    }
    return out;
}

PairField scaled(double alpha, const PairField& x) {
    PairField out = x;
    for (auto& z : out.p) z *= alpha;
    for (auto& z : out.m) z *= alpha;
    return out;
}

}  // namespace

PairField nonlinear_M(const PairField& v, const SolitonParams& p) {
    const Grid& g = v.grid;
    const int N = g.N;
    Fft fft(N);
    const ComplexField phi = soliton_profile(p, g);
    const Cvec phi1 = spectral_derivative(fft, g, phi.v, 1);

    // physical perturbations are real pairs; drop residual imaginary parts
    Cvec u(N), U(N);
    for (int j = 0; j < N; ++j) {
        u[j] = cplx{v.p[j].real(), v.m[j].real()};
        U[j] = phi.v[j] + u[j];
    }
    // d_t v + L v = M(v) with L = -F'(phi), hence M(v) = F(phi + v) - F'(phi) v
    const Cvec Ffull = comoving_rhs(fft, g, U, p);
    const Cvec Flin = comoving_rhs_lin(fft, g, phi.v, phi1, u, p);
    PairField out = make_pair(g);
    for (int j = 0; j < N; ++j) {
        const cplx m = Ffull[j] - Flin[j];
        out.p[j] = m.real();
        out.m[j] = m.imag();
    }
    return out;
}

PairField nonlinear_M2(const PairField& v, const SolitonParams& p, double eps) {
    const PairField mp = nonlinear_M(scaled(eps, v), p);
    const PairField mm = nonlinear_M(scaled(-eps, v), p);
    const PairField m0 = nonlinear_M(scaled(0.0, v), p);
    PairField out = make_pair(v.grid);
    const double inv = 1.0 / (2.0 * eps * eps);
    for (int j = 0; j < v.grid.N; ++j) {
        out.p[j] = (mp.p[j] + mm.p[j] - 2.0 * m0.p[j]) * inv;
        out.m[j] = (mp.m[j] + mm.m[j] - 2.0 * m0.m[j]) * inv;
    }
    return out;
}

ProfileExpansion build_W(const SpectrumReport& rep, double a, int N0) {
    if (!rep.a1_holds)
        throw std::invalid_argument("build_W needs an unstable eigenvalue");
    if (N0 != 1 && N0 != 2)
        throw std::invalid_argument("build_W supports N0 = 1 or 2");

    ProfileExpansion ex;
    ex.params = rep.params;
    ex.grid = rep.grid;
    ex.a = a;
    ex.N0 = N0;
    ex.lambda = rep.lambda;
    ex.A[{1, 1}] = scaled(a, rep.Y1);
    ex.B[{1, 1}] = scaled(a, rep.Y2);
    if (N0 == 1) return ex;

    // quadratic source, projected over 8 equispaced formal phases
    const int NPH = 8;
    PairField S0 = make_pair(rep.grid), Sc = make_pair(rep.grid),
              Ss = make_pair(rep.grid), P1c = make_pair(rep.grid),
              P1s = make_pair(rep.grid);
    double src_scale = 0;
    for (int i = 0; i < NPH; ++i) {
        const double ph = 2.0 * M_PI * i / NPH;
        const PairField vi =
            axpy(std::cos(ph), rep.Y1, scaled(std::sin(ph), rep.Y2));
        const PairField mi = nonlinear_M2(vi, rep.params);
        src_scale = std::max(src_scale, pair_norm_l2(mi));
        S0 = axpy(1.0 / NPH, mi, S0);
        Sc = axpy(2.0 / NPH * std::cos(2 * ph), mi, Sc);
        Ss = axpy(2.0 / NPH * std::sin(2 * ph), mi, Ss);
        P1c = axpy(2.0 / NPH * std::cos(ph), mi, P1c);
        P1s = axpy(2.0 / NPH * std::sin(ph), mi, P1s);
    }
    const double stray = std::max(pair_norm_l2(P1c), pair_norm_l2(P1s));
    if (stray > 1e-6 * std::max(src_scale, 1e-30))
        throw std::runtime_error(
            "build_W: first-harmonic projection of the quadratic source does "
            "not vanish; eigenfunction pair is inconsistent");

    const cplx shifts[2] = {2.0 * rep.lambda.real(), 2.0 * rep.lambda};
    for (const cplx& mu : shifts)
        for (const auto& w : rep.eigenvalues)
            if (std::abs(w - mu) < 1e-4)
                throw ResonanceError(
                    "build_W: doubled eigenvalue shift is within 1e-4 of the "
                    "retained spectrum");

    const BlockOperator op = assemble_L(rep.params, rep.grid, OperatorForm::L_plain);

    ex.A[{0, 2}] = resolvent_solve(op, shifts[0], scaled(a * a, S0), &rep);

    PairField rhs2 = make_pair(rep.grid);
    for (int j = 0; j < rep.grid.N; ++j) {
        rhs2.p[j] = a * a * (Sc.p[j].real() + I * Ss.p[j].real());
        rhs2.m[j] = a * a * (Sc.m[j].real() + I * Ss.m[j].real());
    }
    const PairField w2 = resolvent_solve(op, shifts[1], rhs2, &rep);
    PairField A22 = make_pair(rep.grid), B22 = make_pair(rep.grid);
    for (int j = 0; j < rep.grid.N; ++j) {
        A22.p[j] = w2.p[j].real();
        A22.m[j] = w2.m[j].real();
        B22.p[j] = w2.p[j].imag();
        B22.m[j] = w2.m[j].imag();
    }
    ex.A[{2, 2}] = std::move(A22);
    ex.B[{2, 2}] = std::move(B22);
    return ex;
}

PairField eval_W(const ProfileExpansion& ex, double t) {
    const double rho = ex.lambda.real(), th = ex.lambda.imag();
    PairField out = make_pair(ex.grid);
    for (const auto& [key, Ajk] : ex.A) {
        const auto [j, k] = key;
        out = axpy(std::exp(-rho * k * t) * std::cos(j * th * t), Ajk, out);
    }
    for (const auto& [key, Bjk] : ex.B) {
        const auto [j, k] = key;
        out = axpy(std::exp(-rho * k * t) * std::sin(j * th * t), Bjk, out);
    }
    return out;
}

PairField eval_W_dt(const ProfileExpansion& ex, double t) {
    const double rho = ex.lambda.real(), th = ex.lambda.imag();
    PairField out = make_pair(ex.grid);
    for (const auto& [key, Ajk] : ex.A) {
        const auto [j, k] = key;
        const double e = std::exp(-rho * k * t);
        out = axpy(e * (-rho * k * std::cos(j * th * t) -
                        j * th * std::sin(j * th * t)),
                   Ajk, out);
    }
    for (const auto& [key, Bjk] : ex.B) {
        const auto [j, k] = key;
        const double e = std::exp(-rho * k * t);
        out = axpy(e * (-rho * k * std::sin(j * th * t) +
                        j * th * std::cos(j * th * t)),
                   Bjk, out);
    }
    return out;
}

DressedProfiles dress_profile(const ProfileExpansion& ex, const SolitonParams& p,
                              const Grid& g, double t) {
    if (g.N != ex.grid.N || g.L != ex.grid.L)
        throw std::invalid_argument("dress_profile: grid does not match the expansion");
    const PairField W = eval_W(ex, t);
    ComplexField V1 = pair_to_complex(W);
    Fft fft(g.N);
    V1.v = spectral_shift(fft, g, V1.v, p.x0 + p.c * t);
    const cplx phase = std::exp(I * (p.theta0 + p.omega * t));
    for (auto& z : V1.v) z *= phase;
    const ComplexField R1 = traveling_soliton(p, g, t);
    DressedProfiles out{V1, R1};
    for (int j = 0; j < g.N; ++j) out.U1.v[j] += V1.v[j];
    return out;
}

double err_residual(const ProfileExpansion& ex, const SolitonParams& p,
                    const Grid& g, double t) {
    if (g.N != ex.grid.N || g.L != ex.grid.L)
        throw std::invalid_argument("err_residual: grid does not match the expansion");
    const int N = g.N;
    Fft fft(N);
    const ComplexField phi = soliton_profile(p, g);
    const ComplexField W = pair_to_complex(eval_W(ex, t));
    const ComplexField Wt = pair_to_complex(eval_W_dt(ex, t));

    // co-moving bracket; the phase/translation dressing is an H^2 isometry
    Cvec V(N);
    for (int j = 0; j < N; ++j) V[j] = phi.v[j] + W.v[j];
    const Cvec V1 = spectral_derivative(fft, g, V, 1);
    const Cvec V2 = spectral_derivative(fft, g, V, 2);
    const double s = p.sigma_eff();
    const double b = p.equation == Equation::DNLS_b ? p.b : 0.0;
    ComplexField err = make_field(g);
    for (int j = 0; j < N; ++j) {
        const double M = std::norm(V[j]);
        err.v[j] = I * (I * p.omega * V[j] + Wt.v[j] - p.c * V1[j]) + V2[j] +
                   I * std::pow(M, s) * V1[j];
        if (b != 0.0) err.v[j] += b * M * M * V[j];
    }
    return norm_h2(err);
}

}  // namespace dnls
