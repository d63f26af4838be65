#include "dnls/gauge.hpp"

#include <cmath>
#include <stdexcept>

#include "dnls/fft.hpp"

namespace dnls {

namespace {

double guarded_pow(double base, double e) {
    return std::pow(std::max(base, 1e-120), e);
}

// (1/2) int_{-L/2}^x |w|^{2s}; the anchor stands in for -inf, which is why
// to_gauge insists on a localized state.
Rvec half_prefix(const Fft& fft, const Grid& g, const Cvec& w, double s) {
    Cvec f(g.N);
    for (int j = 0; j < g.N; ++j) f[j] = std::pow(std::norm(w[j]), s);
    const Cvec pre = prefix_integral(fft, g, f);
    Rvec out(g.N);
    for (int j = 0; j < g.N; ++j) out[j] = 0.5 * pre[j].real();
    return out;
}

}  // namespace

GaugePair to_gauge(const ComplexField& u, const SolitonParams& p) {
    const int N = u.grid.N;
    double sup = 0;
    for (const auto& z : u.v) sup = std::max(sup, std::abs(z));
    const double edge = std::max(std::abs(u.v[0]), std::abs(u.v[N - 1]));
    if (edge > 1e-8 * sup)
        throw std::invalid_argument(
            "to_gauge: state is not localized in the box; the gauge prefix "
            "integral has no meaningful anchor");

    Fft fft(N);
    const double s = p.sigma_eff();
    const Rvec G = half_prefix(fft, u.grid, u.v, s);
    GaugePair out{make_field(u.grid), make_field(u.grid)};
    const Cvec ux = spectral_derivative(fft, u.grid, u.v, 1);
    for (int j = 0; j < N; ++j) {
        const cplx ph = std::exp(I * G[j]);
        out.phi.v[j] = ph * u.v[j];
        out.psi.v[j] = ph * ux[j];
    }
    return out;
}

ComplexField from_gauge(const GaugePair& pair, const SolitonParams& p) {
    const int N = pair.phi.grid.N;
    Fft fft(N);
    const Rvec G = half_prefix(fft, pair.phi.grid, pair.phi.v, p.sigma_eff());
    ComplexField u = make_field(pair.phi.grid);
    for (int j = 0; j < N; ++j)
        u.v[j] = std::exp(-I * G[j]) * pair.phi.v[j];
    return u;
}

GaugeRhs gauge_nonlinearity(const GaugePair& pair, const SolitonParams& p,
                            std::string* warning) {
    const Grid& g = pair.phi.grid;
    const int N = g.N;
    const double s = p.sigma_eff();
    if (warning) {
        const bool lipschitz = s == 1.0 || s == 2.0 || s >= 2.5;
        *warning = lipschitz ? ""
                             : "nonlinearity exponent is outside the Lipschitz "
                               "regime {1, 2} and [5/2, inf); local solvability "
                               "of the gauge system is not guaranteed";
    }

    GaugeRhs rhs{make_field(g), make_field(g)};
    if (p.equation == Equation::DNLS_b) {
        for (int j = 0; j < N; ++j) {
            const cplx phi = pair.phi.v[j], psi = pair.psi.v[j];
            const double M = std::norm(phi);
            rhs.P.v[j] = I * phi * phi * std::conj(psi) - p.b * M * M * phi;
            rhs.Q.v[j] = -I * psi * psi * std::conj(phi) -
                         3.0 * p.b * M * M * psi -
                         2.0 * p.b * M * phi * phi * std::conj(psi);
        }
        return rhs;
    }

    const double c2 = s * (s - 1.0);
    Rvec J(N, 0.0);
    if (c2 != 0.0) {
        Fft fft(N);
        Cvec f(N);
        for (int j = 0; j < N; ++j) {
            const cplx phi = pair.phi.v[j], psi = pair.psi.v[j];
            const cplx pc = std::conj(phi);
            f[j] = guarded_pow(std::norm(phi), s - 2.0) *
                   std::imag(psi * psi * pc * pc);
        }
        const Cvec pre = prefix_integral(fft, g, f);
        for (int j = 0; j < N; ++j) J[j] = pre[j].real();
    }
    for (int j = 0; j < N; ++j) {
        const cplx phi = pair.phi.v[j], psi = pair.psi.v[j];
        const double Ms1 = s * guarded_pow(std::norm(phi), s - 1.0);
        rhs.P.v[j] = I * Ms1 * phi * phi * std::conj(psi);
        rhs.Q.v[j] = -I * Ms1 * psi * psi * std::conj(phi);
        if (c2 != 0.0) {
            rhs.P.v[j] -= c2 * phi * J[j];
            rhs.Q.v[j] -= c2 * psi * J[j];
        }
    }
    return rhs;
}

double gauge_constraint_residual(const GaugePair& pair, const SolitonParams& p) {
    const Grid& g = pair.phi.grid;
    Fft fft(g.N);
    const Cvec phix = spectral_derivative(fft, g, pair.phi.v, 1);
    const double s = p.sigma_eff();
    double sup = 0;
    for (int j = 0; j < g.N; ++j) {
        const cplx target = phix[j] - 0.5 * I * std::pow(std::norm(pair.phi.v[j]), s) *
                                          pair.phi.v[j];
        sup = std::max(sup, std::abs(pair.psi.v[j] - target));
    }
    return sup;
}

}  // namespace dnls
