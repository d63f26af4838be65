#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "dnls/fft.hpp"
#include "dnls/grid.hpp"
#include "dnls/operators.hpp"
#include "dnls/profile_expansion.hpp"
#include "dnls/soliton.hpp"
#include "doctest.h"

using namespace dnls;

namespace {

SolitonParams dnls_b(double b, double omega, double c) {
    SolitonParams p;
    p.equation = Equation::DNLS_b;
    p.b = b;
    p.omega = omega;
    p.c = c;
    return p;
}

SolitonParams gdnls(double sigma, double omega, double c) {
    SolitonParams p;
    p.equation = Equation::gDNLS_sigma;
    p.sigma = sigma;
    p.omega = omega;
    p.c = c;
    return p;
}

PairField axpy(const PairField& a, cplx s, const PairField& b) {
    PairField r = a;
    for (size_t j = 0; j < r.p.size(); ++j) {
        r.p[j] += s * b.p[j];
        r.m[j] += s * b.m[j];
    }
    return r;
}

PairField scaled(const PairField& a, double s) {
    PairField r = a;
    for (auto& z : r.p) z *= s;
    for (auto& z : r.m) z *= s;
    return r;
}

// the co-moving right-hand side, written out independently of the library
Cvec full_bracket(const Grid& g, const Cvec& U, const SolitonParams& p) {
    Fft fft(g.N);
    const Cvec U1 = spectral_derivative(fft, g, U, 1);
    const Cvec U2 = spectral_derivative(fft, g, U, 2);
    const double s = p.sigma_eff();
    const double b = p.equation == Equation::DNLS_b ? p.b : 0.0;
    const cplx i{0, 1};
    Cvec F(g.N);
    for (int j = 0; j < g.N; ++j) {
        const double M = std::norm(U[j]);
        F[j] = i * U2[j] - i * p.omega * U[j] + p.c * U1[j] - std::pow(M, s) * U1[j] +
               i * b * M * M * U[j];
    }
    return F;
}

PairField bump(const Grid& g, double amp, double width, double x_off, double k) {
    PairField v = make_pair(g);
    const Rvec x = g.x();
    for (int j = 0; j < g.N; ++j) {
        const double e = amp * std::exp(-width * (x[j] - x_off) * (x[j] - x_off));
        v.p[j] = e * std::cos(k * x[j]);
        v.m[j] = 0.6 * e * std::sin(k * x[j]);
    }
    return v;
}

double fit_rate(const Rvec& t, const Rvec& y) {
    double st = 0, sy = 0, stt = 0, sty = 0;
    const int n = int(t.size());
    for (int i = 0; i < n; ++i) {
        st += t[i];
        sy += std::log(y[i]);
        stt += t[i] * t[i];
        sty += t[i] * std::log(y[i]);
    }
    return -(n * sty - st * sy) / (n * stt - st * st);
}

}  // namespace

TEST_CASE("operator split reproduces the full co-moving bracket") {
    // d_t v + L v = M(v): for any perturbation, M(v) - L v must equal the
    // full right-hand side evaluated at phi + v. The assembled L symmetrizes
    // the advection, so agreement is at the truncation level of the profile.
    struct Case {
        SolitonParams p;
        Grid g;
        double tol;
    };
    const Case cases[] = {
        {dnls_b(0.5, 1, 0.5), make_grid(70, 1024), 1e-8},
        {gdnls(2, 1, 1), make_grid(60, 2048), 1e-5},
    };
    for (const auto& cs : cases) {
        CAPTURE(cs.p.b);
        const BlockOperator op = assemble_L(cs.p, cs.g, OperatorForm::L_plain);
        const ComplexField phi = soliton_profile(cs.p, cs.g);
        const PairField v = bump(cs.g, 0.3, 0.2, 0.8, 1.1);

        Cvec U(cs.g.N);
        for (int j = 0; j < cs.g.N; ++j) U[j] = phi.v[j] + cplx{v.p[j].real(), v.m[j].real()};
        const Cvec lhs = full_bracket(cs.g, U, cs.p);

        const PairField rhs = axpy(nonlinear_M(v, cs.p), {-1, 0}, apply(op, v));
        double sup = 0;
        for (int j = 0; j < cs.g.N; ++j)
            sup = std::max(sup, std::abs(lhs[j] - cplx{rhs.p[j].real(), rhs.m[j].real()}));
        CHECK(sup < cs.tol);
    }
}

TEST_CASE("nonlinearity vanishes quadratically at the profile") {
    const SolitonParams p = dnls_b(0.5, 1, 0.5);
    const Grid g = make_grid(suggested_box(p.h()), 2048);
    const PairField zero = make_pair(g);
    CHECK(pair_norm_l2(nonlinear_M(zero, p)) < 1e-9);

    const PairField v = bump(g, 1.0, 0.3, -0.5, 0.7);
    const PairField m0 = nonlinear_M(zero, p);
    const double r1 = pair_norm_l2(axpy(nonlinear_M(scaled(v, 1e-2), p), {-1, 0}, m0)) / 1e-4;
    const double r2 = pair_norm_l2(axpy(nonlinear_M(scaled(v, 1e-3), p), {-1, 0}, m0)) / 1e-6;
    CHECK(r1 == doctest::Approx(r2).epsilon(0.05));

    // polarized quadratic part: M(e v) - M(0) = e^2 M2(v) + O(e^3), so the
    // remainder is the cubic shell and shrinks linearly relative to e^2 M2
    const PairField m2 = nonlinear_M2(v, p);
    auto remainder = [&](double eps) {
        PairField diff = axpy(nonlinear_M(scaled(v, eps), p), {-1, 0}, m0);
        diff = axpy(diff, {-eps * eps, 0}, m2);
        return pair_norm_l2(diff);
    };
    CHECK(remainder(0.05) < 5e-2 * 0.05 * 0.05 * pair_norm_l2(m2));
    CHECK(remainder(0.05) / remainder(0.025) == doctest::Approx(8.0).epsilon(0.2));
}

TEST_CASE("first order expansion is the linear mode") {
    const SolitonParams p = gdnls(2, 1, 1);
    const Grid g = make_grid(60, 512);
    const SpectrumReport rep = eigen_spectrum(assemble_L(p, g, OperatorForm::L_plain));
    const double a = 0.37;
    const ProfileExpansion ex = build_W(rep, a, 1);

    CHECK(ex.N0 == 1);
    CHECK(ex.a == a);
    CHECK(ex.lambda == rep.lambda);
    REQUIRE(ex.A.count({1, 1}) == 1);
    CHECK(pair_norm_l2(axpy(ex.A.at({1, 1}), {-a, 0}, rep.Y1)) < 1e-14);

    for (double t : {0.0, 0.4, 1.1}) {
        const PairField w = eval_W(ex, t);
        const PairField y = Y_of_t(rep, t);
        CHECK(pair_norm_l2(axpy(w, {-a, 0}, y)) < 1e-13);
    }

    // analytic time derivative against a centered difference
    const double t0 = 0.3, dt = 1e-5;
    PairField fd = axpy(eval_W(ex, t0 + dt), {-1, 0}, eval_W(ex, t0 - dt));
    for (auto& z : fd.p) z /= 2 * dt;
    for (auto& z : fd.m) z /= 2 * dt;
    const PairField an = eval_W_dt(ex, t0);
    CHECK(pair_norm_l2(axpy(fd, {-1, 0}, an)) / pair_norm_l2(an) < 1e-8);
}

TEST_CASE("second order coefficients appear with the a^2 weight") {
    const SolitonParams p = gdnls(2, 1, 1);
    const Grid g = make_grid(60, 512);
    const SpectrumReport rep = eigen_spectrum(assemble_L(p, g, OperatorForm::L_plain));
    const ProfileExpansion e1 = build_W(rep, 0.2, 2);
    const ProfileExpansion e2 = build_W(rep, 0.4, 2);

    for (auto key : {std::pair{0, 2}, std::pair{2, 2}}) {
        REQUIRE(e1.A.count(key) == 1);
        CHECK(pair_norm_l2(e1.A.at(key)) > 0);
        // doubling a quadruples the k = 2 shell
        CHECK(pair_norm_l2(axpy(e2.A.at(key), {-4, 0}, e1.A.at(key))) <
              1e-10 * pair_norm_l2(e2.A.at(key)));
    }

    // theta = 0 here: the sin projections carry no data
    if (e1.B.count({2, 2}))
        CHECK(pair_norm_l2(e1.B.at({2, 2})) < 1e-10 * pair_norm_l2(e1.A.at({2, 2})));

    // the N0 = 2 evaluation differs from N0 = 1 by exactly the k = 2 shell
    const ProfileExpansion lin = build_W(rep, 0.2, 1);
    const double t = 0.5, rho = rep.lambda.real();
    const double gap = pair_norm_l2(axpy(eval_W(e1, t), {-1, 0}, eval_W(lin, t)));
    const double shell =
        std::exp(-2 * rho * t) *
        pair_norm_l2(axpy(e1.A.at({0, 2}), {1, 0}, e1.A.at({2, 2})));
    CHECK(gap == doctest::Approx(shell).epsilon(1e-10));
    CHECK(gap > 0);
}

TEST_CASE("expansion remainder decays at the claimed orders") {
    // remainder d_t W + L W - M(W) and the full dressed residual; the fitted
    // e-folding rates sit at (N0 + 1) rho
    const SolitonParams p = gdnls(2, 1, 1);
    const Grid g = make_grid(60, 2048);
    const BlockOperator op = assemble_L(p, g, OperatorForm::L_plain);
    const SpectrumReport rep = eigen_spectrum(op);
    const double rho = rep.lambda.real();
    CHECK(rho == doctest::Approx(2.9635023283).epsilon(1e-8));

    for (int N0 : {1, 2}) {
        CAPTURE(N0);
        const ProfileExpansion ex = build_W(rep, 0.6, N0);
        Rvec ts, rem, err;
        for (int j = 0; j <= 8; ++j) {
            const double t = (2.0 + 0.5 * j) / rho;
            const PairField W = eval_W(ex, t);
            PairField R = axpy(eval_W_dt(ex, t), {1, 0}, apply(op, W));
            R = axpy(R, {-1, 0}, nonlinear_M(W, p));
            ts.push_back(t);
            rem.push_back(pair_norm_l2(R));
            err.push_back(err_residual(ex, p, g, t));
        }
        const double rate_rem = fit_rate(ts, rem) / rho;
        const double rate_err = fit_rate(ts, err) / rho;
        CAPTURE(rate_rem);
        CAPTURE(rate_err);
        if (N0 == 1) {
            CHECK(rate_rem > 1.95);
            CHECK(rate_rem < 2.05);
            CHECK(rate_err > 1.9);
            CHECK(rate_err < 2.1);
        } else {
            CHECK(rate_rem > 2.9);
            CHECK(rate_rem < 3.05);
            CHECK(rate_err > 2.7);
            CHECK(rate_err < 3.05);
        }
    }
}

TEST_CASE("dressing translates, rotates and sums") {
    SolitonParams p = gdnls(2, 1, 1);
    p.x0 = 1.3;
    p.theta0 = 0.8;
    const Grid g = make_grid(60, 512);
    const SpectrumReport rep = eigen_spectrum(assemble_L(p, g, OperatorForm::L_plain));
    const ProfileExpansion ex = build_W(rep, 0.1, 1);
    const double t = 0.5;

    const DressedProfiles d = dress_profile(ex, p, g, t);

    // V1 is the expansion shifted to the soliton position and rotated
    Fft fft(g.N);
    ComplexField w = pair_to_complex(eval_W(ex, t));
    w.v = spectral_shift(fft, g, w.v, p.x0 + p.c * t);
    const cplx phase = std::exp(cplx{0, 1} * (p.theta0 + p.omega * t));
    double sup = 0;
    for (int j = 0; j < g.N; ++j)
        sup = std::max(sup, std::abs(d.V1.v[j] - phase * w.v[j]));
    CHECK(sup < 1e-12);

    CHECK(norm_l2(d.V1) == doctest::Approx(pair_norm_l2(eval_W(ex, t))).epsilon(1e-12));

    const ComplexField R1 = traveling_soliton(p, g, t);
    sup = 0;
    for (int j = 0; j < g.N; ++j)
        sup = std::max(sup, std::abs(d.U1.v[j] - R1.v[j] - d.V1.v[j]));
    CHECK(sup < 1e-12);

    // the residual is finite and the grid is pinned to the expansion
    CHECK(err_residual(ex, p, g, t) > 0);
    const Grid other = make_grid(60, 256);
    CHECK_THROWS_AS(err_residual(ex, p, other, t), std::invalid_argument);
    CHECK_THROWS_AS(dress_profile(ex, p, other, t), std::invalid_argument);
}
