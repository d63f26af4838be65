#include "dnls/modulation.hpp"

#include <cmath>

#include "dnls/fft.hpp"
#include "dnls/soliton.hpp"

namespace dnls {

namespace {

struct WindowMask {
    std::vector<char> in;
    bool all = true;
};

WindowMask make_mask(const Grid& g, const std::optional<Ball>& ball) {
    WindowMask m;
    m.in.assign(g.N, 1);
    if (!ball) return m;
    m.all = false;
    const Rvec x = g.x();
    for (int j = 0; j < g.N; ++j)
        m.in[j] = std::abs(x[j] - ball->center) <= ball->radius ? 1 : 0;
    return m;
}

}  // namespace

ModulationFit modulation_distance(const ComplexField& u, const SolitonParams& p,
                                  std::optional<Ball> restricted) {
    const Grid& g = u.grid;
    const int N = g.N;
    Fft fft(N);

    SolitonParams q = p;   // fit against the centered, unrotated profile
    q.x0 = 0;
    q.theta0 = 0;
    const ComplexField phi = soliton_profile(q, g);

    const WindowMask mask = make_mask(g, restricted);
    Cvec uw(N);
    for (int j = 0; j < N; ++j) uw[j] = mask.in[j] ? u.v[j] : cplx{0, 0};

    const Cvec uhat = fft.forward(uw);
    const Cvec phihat = fft.forward(phi.v);
    Cvec cross(N);
    for (int j = 0; j < N; ++j) cross[j] = uhat[j] * std::conj(phihat[j]);

    // <u_w, phi(. - y_m)> = dx * N * ifft(cross)_m on the shift lattice
    const Cvec corr = fft.inverse(cross);
    int best = 0;
    double mag = -1;
    for (int m = 0; m < N; ++m) {
        const double a = std::abs(corr[m]);
        if (a > mag) { mag = a; best = m; }
    }

    const Rvec k = g.k();
    // band-limited <u_w, phi(. - y)> at arbitrary y
    auto inner = [&](double y) {
        cplx s{0, 0};
        for (int j = 0; j < N; ++j)
            s += cross[j] * std::exp(I * k[j] * y);
        return s * (g.dx() / static_cast<double>(N));
    };

    const double dx = g.dx();
    double lo = best * dx - dx, hi = best * dx + dx;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = std::abs(inner(x1)), f2 = std::abs(inner(x2));
    while (hi - lo > 1e-6) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = std::abs(inner(x2));
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = std::abs(inner(x1));
        }
    }
    double y = 0.5 * (lo + hi);
    // the scan lattice is periodic; report the shift inside [-L/2, L/2)
    if (y >= 0.5 * g.L) y -= g.L;

    ModulationFit fit;
    fit.restricted = restricted.has_value();
    fit.y = y;
    fit.theta = std::arg(inner(y));

    const Cvec shifted = spectral_shift(fft, g, phi.v, y);
    const cplx rot = std::exp(I * fit.theta);
    double d2 = 0;
    for (int j = 0; j < N; ++j) {
        if (!mask.in[j]) continue;
        d2 += std::norm(u.v[j] - rot * shifted[j]);
    }
    fit.distance = std::sqrt(std::max(0.0, d2 * dx));
    return fit;
}

MultiModulationFit multi_modulation_distance(const ComplexField& u,
                                             const std::vector<SolitonParams>& ps,
                                             double t) {
    const Grid& g = u.grid;
    const int K = static_cast<int>(ps.size());
    Fft fft(g.N);

    auto make_piece = [&](const SolitonParams& p, const ModulationFit& fit) {
        SolitonParams q = p;
        q.x0 = 0;
        q.theta0 = 0;
        const ComplexField phi = soliton_profile(q, g);
        Cvec piece = spectral_shift(fft, g, phi.v, fit.y);
        const cplx rot = std::exp(I * fit.theta);
        for (auto& z : piece) z *= rot;
        return piece;
    };

    bool overlap = false;
    for (int j = 0; j < K; ++j)
        for (int l = j + 1; l < K; ++l) {
            const double cj = ps[j].x0 + ps[j].c * t;
            const double cl = ps[l].x0 + ps[l].c * t;
            if (std::abs(cj - cl) < 4.0 / ps[j].h() + 4.0 / ps[l].h())
                overlap = true;
        }

    MultiModulationFit out;
    ComplexField resid = u;
    std::vector<Cvec> pieces;
    for (const auto& p : ps) {
        const Ball ball{p.x0 + p.c * t, 4.0 / p.h()};
        ModulationFit fit = modulation_distance(resid, p, ball);
        Cvec piece = make_piece(p, fit);
        for (int j = 0; j < g.N; ++j) resid.v[j] -= piece[j];
        out.components.push_back(fit);
        pieces.push_back(std::move(piece));
    }

    if (overlap) {
        out.warning =
            "component windows overlap; greedy fit refined by joint "
            "coordinate descent";
        for (int sweep = 0; sweep < 20; ++sweep) {
            double moved = 0;
            for (int j = 0; j < K; ++j) {
                for (int i = 0; i < g.N; ++i) resid.v[i] += pieces[j][i];
                const Ball ball{out.components[j].y, 4.0 / ps[j].h()};
                ModulationFit fit = modulation_distance(resid, ps[j], ball);
                moved = std::max(moved, std::abs(fit.y - out.components[j].y));
                Cvec piece = make_piece(ps[j], fit);
                for (int i = 0; i < g.N; ++i) resid.v[i] -= piece[i];
                out.components[j] = fit;
                pieces[j] = std::move(piece);
            }
            if (moved < 1e-7) break;
        }
    }

    out.distance = norm_l2(resid);
    return out;
}

}  // namespace dnls
