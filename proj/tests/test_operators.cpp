#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <numbers>

#include "dnls/fft.hpp"
#include "dnls/grid.hpp"
#include "dnls/operators.hpp"
#include "dnls/soliton.hpp"
#include "doctest.h"

using namespace dnls;

namespace {

constexpr double pi = std::numbers::pi;

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

double nearest(const Cvec& set, cplx target) {
    double best = 1e300;
    for (auto z : set) best = std::min(best, std::abs(z - target));
    return best;
}

PairField axpy(const PairField& a, cplx s, const PairField& b) {
    PairField r = a;
    for (size_t j = 0; j < r.p.size(); ++j) {
        r.p[j] += s * b.p[j];
        r.m[j] += s * b.m[j];
    }
    return r;
}

double kernel_residual(const BlockOperator& op, const ComplexField& f) {
    PairField v = complex_to_pair(f);
    return pair_norm_l2(apply(op, v)) / pair_norm_l2(v);
}

}  // namespace

TEST_CASE("pair field representation") {
    const Grid g = make_grid(40, 128);
    ComplexField f = make_field(g);
    const Rvec x = g.x();
    for (int j = 0; j < g.N; ++j)
        f.v[j] = cplx{std::exp(-0.2 * x[j] * x[j]), std::sin(0.5 * x[j])};

    const PairField v = complex_to_pair(f);
    CHECK(pair_norm_l2(v) == doctest::Approx(norm_l2(f)).epsilon(1e-13));

    const ComplexField back = pair_to_complex(v);
    double sup = 0;
    for (int j = 0; j < g.N; ++j) sup = std::max(sup, std::abs(back.v[j] - f.v[j]));
    CHECK(sup < 1e-14);

    const PairField z = make_pair(g);
    CHECK(z.p.size() == size_t(g.N));
    CHECK(pair_norm_l2(z) == 0.0);
}

TEST_CASE("symmetry directions lie in the kernel") {
    // i phi (phase) and phi_x (translation) are annihilated up to the
    // spectral truncation of the profile itself.
    struct Case {
        SolitonParams p;
        Grid g;
        double tol_phase, tol_translation;
    };
    const Case cases[] = {
        {dnls_b(1, 1, 0.5), make_grid(70, 1024), 1e-11, 1e-9},
        // sharper profile, needs dx ~ 0.03
        {gdnls(2, 1, 1), make_grid(60, 2048), 1e-7, 1e-5},
    };
    for (const auto& cs : cases) {
        CAPTURE(cs.p.sigma);
        const BlockOperator op = assemble_L(cs.p, cs.g, OperatorForm::L_plain);
        const ComplexField phi = soliton_profile(cs.p, cs.g);
        Fft fft(cs.g.N);

        ComplexField iphi = phi;
        for (auto& z : iphi.v) z *= cplx{0, 1};
        CHECK(kernel_residual(op, iphi) < cs.tol_phase);

        ComplexField dphi = phi;
        dphi.v = spectral_derivative(fft, cs.g, phi.v, 1);
        CHECK(kernel_residual(op, dphi) < cs.tol_translation);
    }
}

TEST_CASE("spectrum at the unstable reference point") {
    const SolitonParams p = gdnls(2, 1, 1);
    const Grid g = make_grid(60, 512);
    const BlockOperator op = assemble_L(p, g, OperatorForm::L_plain);
    const SpectrumReport rep = eigen_spectrum(op);

    CHECK(rep.eigenvalues.size() == 6);
    CHECK(rep.lambda.real() == doctest::Approx(2.9644441953347713).epsilon(1e-9));
    CHECK(std::abs(rep.lambda.imag()) < 1e-12);
    CHECK(rep.a1_holds);
    CHECK(rep.note.empty());
    CHECK(rep.essential_band == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(rep.scale > 100);

    // the retained set at this grid: +-lambda, a split near-zero pair, and a
    // purely imaginary pair inside the gap
    CHECK(nearest(rep.eigenvalues, {2.9644441953347713, 0}) < 1e-8);
    CHECK(nearest(rep.eigenvalues, {-2.9644441953347713, 0}) < 1e-8);
    CHECK(nearest(rep.eigenvalues, {0.020904976645, 0}) < 1e-8);
    CHECK(nearest(rep.eigenvalues, {-0.020904976645, 0}) < 1e-8);
    CHECK(nearest(rep.eigenvalues, {0, 0.064959741256}) < 1e-8);
    CHECK(nearest(rep.eigenvalues, {0, -0.064959741256}) < 1e-8);

    // quadruple closure: the retained set is stable under z -> -z and conj
    for (auto z : rep.eigenvalues) {
        CHECK(nearest(rep.eigenvalues, -z) < 1e-10);
        CHECK(nearest(rep.eigenvalues, std::conj(z)) < 1e-10);
    }

    CHECK(pair_norm_l2(rep.Z) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.alpha_fit > 0);

    // eigenvector residuals at the solver's backward error
    CHECK(pair_norm_l2(axpy(apply(op, rep.Z), -rep.lambda, rep.Z)) < 1e-9);
    CHECK(pair_norm_l2(axpy(apply(op, rep.Zgrow), rep.lambda, rep.Zgrow)) < 1e-9);

    // real eigenvalue: the rotated eigenvector is real, so Y2 vanishes and
    // Y(t) is a pure exponential along Y1
    CHECK(pair_norm_l2(rep.Y2) < 1e-12);
    CHECK(pair_norm_l2(axpy(rep.Y1, {-1, 0}, Y_of_t(rep, 0.0))) < 1e-14);
    const double ratio = pair_norm_l2(Y_of_t(rep, 0.3)) / pair_norm_l2(rep.Y1);
    CHECK(ratio == doctest::Approx(std::exp(-0.3 * rep.lambda.real())).epsilon(1e-12));

    // sign convention: the largest sample sits on the positive real axis
    cplx top = 0;
    for (int j = 0; j < g.N; ++j) {
        if (std::abs(rep.Z.p[j]) > std::abs(top)) top = rep.Z.p[j];
        if (std::abs(rep.Z.m[j]) > std::abs(top)) top = rep.Z.m[j];
    }
    CHECK(top.real() > 0);
    CHECK(std::abs(top.imag()) < 1e-12 * std::abs(top));

    // centered difference of Y(t) against -L Y
    const double dt = 1e-4;
    PairField fd = axpy(Y_of_t(rep, dt), {-1, 0}, Y_of_t(rep, -dt));
    for (auto& z : fd.p) z /= 2 * dt;
    for (auto& z : fd.m) z /= 2 * dt;
    const PairField res = axpy(fd, {1, 0}, apply(op, Y_of_t(rep, 0.0)));
    CHECK(pair_norm_l2(res) / pair_norm_l2(rep.Y1) < 1e-6);
}

TEST_CASE("retained counts are stable under grid refinement") {
    const SolitonParams p = gdnls(2, 1, 1);
    const Grid g = make_grid(60, 1024);
    const SpectrumReport rep = eigen_spectrum(assemble_L(p, g, OperatorForm::L_plain));

    CHECK(rep.eigenvalues.size() == 6);
    CHECK(rep.lambda.real() == doctest::Approx(2.9635023304169446).epsilon(1e-9));
    CHECK(std::abs(rep.lambda.imag()) < 1e-12);
    CHECK(nearest(rep.eigenvalues, -rep.lambda) < 1e-10);

    // the four small members are discretization splittings of the symmetry
    // modes; their values shrink with dx, only their count is stable
    int small = 0;
    for (auto z : rep.eigenvalues)
        if (std::abs(z) < 1e-3) ++small;
    CHECK(small == 4);

    CHECK(rep.alpha_fit > 0.3);
    CHECK(rep.alpha_fit <= 0.5 * p.h() + 1e-12);
}

TEST_CASE("fitted tail decay is capped at h/2") {
    // broad slow soliton: the raw fit exceeds the admissible range and the
    // report clamps it to h/2 = 0.5
    const SolitonParams p = gdnls(2, 1.25, -2);
    const Grid g = make_grid(140, 1024);
    const SpectrumReport rep = eigen_spectrum(assemble_L(p, g, OperatorForm::L_plain));

    CHECK(rep.eigenvalues.size() == 6);
    CHECK(rep.lambda.real() == doctest::Approx(0.10761094944676214).epsilon(1e-9));
    CHECK(rep.a1_holds);
    CHECK(decay_fit(rep.Z) == doctest::Approx(0.5112281550).epsilon(1e-4));
    CHECK(rep.alpha_fit == 0.5);
}

TEST_CASE("half-phase conjugated form reproduces the plain spectrum") {
    // box with c L / 2 = 0 mod 2 pi so the conjugating phase is a lattice
    // plane wave and the similarity is exact up to the Nyquist wrap
    const SolitonParams p = gdnls(2, 1, 1);
    const Grid g = make_grid(20 * pi, 1024);
    const SpectrumReport rp = eigen_spectrum(assemble_L(p, g, OperatorForm::L_plain));
    const SpectrumReport rt = eigen_spectrum(assemble_L(p, g, OperatorForm::L_tilde));

    CHECK(rp.eigenvalues.size() == rt.eigenvalues.size());
    CHECK(std::abs(rp.lambda - rt.lambda) < 1e-7);
    double worst = 0;
    for (auto z : rp.eigenvalues) worst = std::max(worst, nearest(rt.eigenvalues, z));
    CHECK(worst < 2e-5);
}

TEST_CASE("H form is symmetric and i H recovers L") {
    for (const auto& p : {gdnls(2, 1, 1), dnls_b(1, 1, 0.5)}) {
        CAPTURE(p.b);
        const Grid g = make_grid(60, 256);
        const int N = g.N;
        const BlockOperator Lp = assemble_L(p, g, OperatorForm::L_plain);
        const BlockOperator Hf = assemble_L(p, g, OperatorForm::H_form);

        const double sym = (Hf.A - Hf.A.transpose()).cwiseAbs().maxCoeff();
        CHECK(sym < 1e-10);

        // i H in the real block representation is [[-H21,-H22],[H11,H12]];
        // assembling both forms from the same blocks makes this exact
        Eigen::MatrixXd iH(2 * N, 2 * N);
        iH.topLeftCorner(N, N) = -Hf.A.bottomLeftCorner(N, N);
        iH.topRightCorner(N, N) = -Hf.A.bottomRightCorner(N, N);
        iH.bottomLeftCorner(N, N) = Hf.A.topLeftCorner(N, N);
        iH.bottomRightCorner(N, N) = Hf.A.topRightCorner(N, N);
        CHECK((iH - Lp.A).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("resolvent solve inverts L - mu off the spectrum") {
    const SolitonParams p = gdnls(2, 1, 1);
    const Grid g = make_grid(60, 512);
    const BlockOperator op = assemble_L(p, g, OperatorForm::L_plain);
    const SpectrumReport rep = eigen_spectrum(op);
    const cplx mu = rep.lambda / 2.0;

    PairField X = make_pair(g);
    const Rvec x = g.x();
    for (int j = 0; j < g.N; ++j) {
        X.p[j] = std::exp(-0.2 * x[j] * x[j]) * cplx{1.0, 0.3};
        X.m[j] = std::exp(-0.25 * x[j] * x[j]) * cplx{-0.4, 1.0};
    }
    const PairField rhs = axpy(apply(op, X), -mu, X);

    const PairField Xr = resolvent_solve(op, mu, rhs, &rep);
    CHECK(pair_norm_l2(axpy(Xr, {-1, 0}, X)) / pair_norm_l2(X) < 1e-10);
    CHECK(pair_norm_l2(axpy(apply(op, Xr), -mu, Xr)) ==
          doctest::Approx(pair_norm_l2(rhs)).epsilon(1e-10));

    // rejected: on a retained eigenvalue, and on the essential band
    CHECK_THROWS_AS(resolvent_solve(op, rep.lambda, rhs, &rep), ResonanceError);
    CHECK_THROWS_AS(resolvent_solve(op, cplx(0, rep.essential_band + 0.3), rhs, &rep),
                    ResonanceError);
    // fine just off the band
    CHECK_NOTHROW(resolvent_solve(op, rep.lambda + cplx(0.5, 0), rhs, &rep));
}

TEST_CASE("decay fit recovers exponential rates") {
    const Grid g = make_grid(60, 512);
    const Rvec x = g.x();

    Rvec samples(g.N);
    for (int j = 0; j < g.N; ++j) samples[j] = std::exp(-std::abs(x[j]));
    double C = 0;
    CHECK(decay_fit(g, samples, &C) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(C == doctest::Approx(1.0).epsilon(1e-9));

    for (int j = 0; j < g.N; ++j) samples[j] = 2 * std::exp(-0.5 * std::abs(x[j]));
    CHECK(decay_fit(g, samples, &C) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(C == doctest::Approx(2.0).epsilon(1e-9));

    // two rates: the window average leans on the slow one
    for (int j = 0; j < g.N; ++j)
        samples[j] = std::exp(-std::abs(x[j])) + std::exp(-2 * std::abs(x[j]));
    CHECK(decay_fit(g, samples) == doctest::Approx(1.0).epsilon(1e-3));

    // smooth complex field: the modulus is fitted, the phase is irrelevant
    ComplexField f = make_field(g);
    for (int j = 0; j < g.N; ++j)
        f.v[j] = std::exp(cplx(0, 3 * x[j])) / std::cosh(0.7 * x[j]);
    CHECK(decay_fit(f) == doctest::Approx(0.7).epsilon(1e-3));

    // pair overload pools moduli and derivative moduli
    PairField v = make_pair(g);
    for (int j = 0; j < g.N; ++j) {
        v.p[j] = 1.0 / std::cosh(0.9 * x[j]);
        v.m[j] = 0.5 / std::cosh(0.9 * x[j]);
    }
    CHECK(decay_fit(v) == doctest::Approx(0.9).epsilon(1e-3));
}

TEST_CASE("spectrally stable point reports the failed assumption") {
    const SolitonParams p = gdnls(0.5, 1, 1);
    const Grid g = make_grid(80, 1024);
    const SpectrumReport rep = eigen_spectrum(assemble_L(p, g, OperatorForm::L_plain));

    CHECK_FALSE(rep.a1_holds);
    CHECK(rep.note.find("(A1) fails") != std::string::npos);
    double worst = 0;
    for (auto z : rep.eigenvalues) worst = std::max(worst, z.real());
    CHECK(worst < 1e-4);
    CHECK_THROWS_AS(Y_of_t(rep, 0.0), std::invalid_argument);
}

TEST_CASE("mode formula structure for a rotating eigenvalue") {
    // synthetic report: lambda = rho + i theta with theta != 0, so
    // e^{rho t} Y(t) traces an ellipse with period 2 pi / theta
    const Grid g = make_grid(40, 128);
    SpectrumReport rep;
    rep.grid = g;
    rep.lambda = cplx(0.3, 2.0);
    rep.a1_holds = true;
    rep.Y1 = make_pair(g);
    rep.Y2 = make_pair(g);
    const Rvec x = g.x();
    for (int j = 0; j < g.N; ++j) {
        rep.Y1.p[j] = std::exp(-0.3 * x[j] * x[j]);
        rep.Y1.m[j] = 0.2 * std::exp(-0.5 * x[j] * x[j]);
        rep.Y2.p[j] = 0.7 * std::exp(-0.4 * (x[j] - 1) * (x[j] - 1));
        rep.Y2.m[j] = -0.1 * std::exp(-0.2 * x[j] * x[j]);
    }

    const double T = 2 * pi / rep.lambda.imag();
    for (double t : {0.17, 0.62, 1.3}) {
        PairField a = Y_of_t(rep, t);
        PairField b = Y_of_t(rep, t + T);
        const double sa = std::exp(rep.lambda.real() * t);
        const double sb = std::exp(rep.lambda.real() * (t + T));
        for (auto& z : a.p) z *= sa;
        for (auto& z : a.m) z *= sa;
        for (auto& z : b.p) z *= sb;
        for (auto& z : b.m) z *= sb;
        CHECK(pair_norm_l2(axpy(a, {-1, 0}, b)) / pair_norm_l2(a) < 1e-12);
    }
}
