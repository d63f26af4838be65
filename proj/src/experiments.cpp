#include "dnls/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dnls/fft.hpp"
#include "dnls/soliton.hpp"

namespace dnls {

namespace {

// Physical perturbation direction: entrywise real parts of the eigenfunction
// pair read as the complex scalar v+ + i v-, L2-normalized.
ComplexField real_direction(const PairField& Z) {
    ComplexField d = make_field(Z.grid);
    for (int j = 0; j < Z.grid.N; ++j)
        d.v[j] = cplx{Z.p[j].real(), Z.m[j].real()};
    const double n = norm_l2(d);
    if (n == 0) throw std::invalid_argument("perturbation direction vanishes");
    for (auto& z : d.v) z /= n;
    return d;
}

// Trigonometric interpolant of f, recentered at `center` on a (possibly
// different) box; points outside the source box read as 0, which is where
// the localized direction has decayed to round-off anyway.
ComplexField sample_field_on(const ComplexField& f, const Grid& gnew,
                             double center) {
    const Grid& gs = f.grid;
    Fft fft(gs.N);
    const Cvec hat = fft.forward(f.v);
    const Rvec ks = gs.k();
    ComplexField out = make_field(gnew);
    const Rvec xn = gnew.x();
    for (int i = 0; i < gnew.N; ++i) {
        const double xi = xn[i] - center;
        if (std::abs(xi) >= 0.5 * gs.L) continue;
        cplx s{0, 0};
        for (int j = 0; j < gs.N; ++j)
            s += hat[j] * std::exp(I * ks[j] * (xi + 0.5 * gs.L));
        out.v[i] = s / static_cast<double>(gs.N);
    }
    return out;
}

double fit_log_slope(const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& [t, v] : pts) {
        if (!(v > 0)) continue;
        const double ly = std::log(v);
        sx += t;
        sy += ly;
        sxx += t * t;
        sxy += t * ly;
        ++n;
    }
    if (n < 2) return 0;
    const double denom = n * sxx - sx * sx;
    if (denom == 0) return 0;
    return (n * sxy - sx * sy) / denom;
}

}  // namespace

std::vector<EscapeRecord> escape_experiment(const SolitonParams& p,
                                            const SpectrumReport& rep,
                                            const Rvec& a_list, double epsilon,
                                            const EscapeConfig& cfg) {
    if (!rep.a1_holds)
        throw std::invalid_argument(
            "escape experiment needs an unstable eigenvalue in the report");
    const Grid& g = rep.grid;
    const double rho = rep.lambda.real();

    ComplexField dir = real_direction(rep.Zgrow);
    if (p.x0 != 0 || p.theta0 != 0) {
        Fft fft(g.N);
        dir.v = spectral_shift(fft, g, dir.v, p.x0);
        const cplx rot = std::exp(I * p.theta0);
        for (auto& z : dir.v) z *= rot;
    }
    const double dir_h2 = norm_h2(dir);

    const ComplexField phi = soliton_profile(p, g);
    const double eps_eff =
        epsilon > 0 ? epsilon
                    : (cfg.epsilon > 0 ? cfg.epsilon : 1e-2 * norm_l2(phi));
    const double t_max = cfg.t_max > 0 ? cfg.t_max : 12.0 / rho;
    const double check = cfg.check_every > 0 ? cfg.check_every : 0.05 / rho;

    std::vector<EscapeRecord> records;
    for (double a : a_list) {
        EscapeRecord rec;
        rec.a = a;
        rec.dir_h2 = dir_h2;

        ComplexField u = traveling_soliton(p, g, 0.0);
        for (int j = 0; j < g.N; ++j) u.v[j] += a * dir.v[j];

        rec.initial_distance = modulation_distance(u, p).distance;
        rec.trace.emplace_back(0.0, rec.initial_distance);

        std::vector<std::pair<double, double>> growth;
        {
            const ComplexField R1 = traveling_soliton(p, g, 0.0);
            ComplexField diff = u;
            for (int j = 0; j < g.N; ++j) diff.v[j] -= R1.v[j];
            growth.emplace_back(0.0, norm_l2(diff));
        }
        const double dr0 = growth.front().second;

        double t = 0;
        bool blew = false;
        while (t < t_max && !blew) {
            const double t_next = std::min(t_max, t + check);
            EvolutionConfig evo = cfg.evo;
            evo.t_start = t;
            evo.t_end = t_next;
            evo.log_every = 0;
            ComplexField state{g, u.v};
            const Trajectory traj = evolve_u(state, p, evo);
            u.v = traj.states.back();
            t = traj.blew_up ? traj.t_blowup : t_next;
            blew = traj.blew_up;

            const ModulationFit fit = modulation_distance(u, p);
            rec.trace.emplace_back(t, fit.distance);
            const ComplexField R1 = traveling_soliton(p, g, t);
            ComplexField diff = u;
            for (int j = 0; j < g.N; ++j) diff.v[j] -= R1.v[j];
            growth.emplace_back(t, norm_l2(diff));

            if (fit.distance >= eps_eff) {
                rec.t_exit = t;
                rec.exit_distance = fit.distance;
                break;
            }
            if (blew) {
                rec.t_exit = t;
                rec.exit_distance = fit.distance;
            }
        }

        std::vector<std::pair<double, double>> window;
        for (const auto& [tt, v] : growth)
            if (v >= 2.0 * dr0 && v <= 0.5 * eps_eff) window.emplace_back(tt, v);
        if (window.size() < 3) {
            window.clear();
            for (const auto& [tt, v] : growth)
                if (v >= 1.5 * dr0 && v <= eps_eff) window.emplace_back(tt, v);
        }
        rec.fitted_rate = fit_log_slope(window);
        records.push_back(std::move(rec));
    }
    return records;
}

MultiConfig make_multi_config(const std::vector<SolitonParams>& ps,
                              const SpectrumReport& rep, double a,
                              double epsilon_target) {
    if (ps.empty())
        throw std::invalid_argument("multi config needs at least one soliton");
    for (const auto& p : ps) {
        const Validity v = validate_params(p);
        if (!v.ok) throw std::invalid_argument(v.message);
        if (p.equation != ps[0].equation ||
            (p.equation == Equation::DNLS_b && p.b != ps[0].b) ||
            (p.equation == Equation::gDNLS_sigma && p.sigma != ps[0].sigma))
            throw std::invalid_argument(
                "multi config components must share one equation");
    }

    MultiConfig mc;
    mc.params = ps;
    mc.a = a;
    mc.epsilon_target = epsilon_target;

    const int K = static_cast<int>(ps.size());
    double min_dc = INFINITY, min_h = INFINITY;
    for (int j = 0; j < K; ++j) {
        min_h = std::min(min_h, ps[j].h());
        for (int l = j + 1; l < K; ++l) {
            const double dc = std::abs(ps[j].c - ps[l].c);
            if (dc == 0)
                throw std::invalid_argument(
                    "two components share a speed; the pair never separates");
            min_dc = std::min(min_dc, dc);
        }
    }
    mc.v_star = K >= 2 ? min_dc / 9.0 : 0.0;
    mc.h_star = min_h;
    if (rep.alpha_fit > 0) mc.h_star = std::min(mc.h_star, 2.0 * rep.alpha_fit);

    const double rho = rep.a1_holds ? rep.lambda.real() : 0.0;
    const double horizon = rho > 0 ? 12.0 / rho : 10.0;
    double reach = 0;
    for (const auto& p : ps)
        reach = std::max(reach, std::abs(p.x0) + std::abs(p.c) * horizon);
    const double L = std::max(suggested_box(min_h), 2.0 * (reach + 35.0 / min_h));
    mc.grid = make_grid(L, 4096);
    return mc;
}

MultiEscapeRecord multi_escape_experiment(const MultiConfig& mc,
                                          const SpectrumReport& rep,
                                          const EscapeConfig& cfg) {
    if (!rep.a1_holds)
        throw std::invalid_argument(
            "multi escape experiment needs an unstable eigenvalue");
    const int K = static_cast<int>(mc.params.size());
    if (K == 0) throw std::invalid_argument("empty multi config");
    if (K >= 2 && mc.v_star <= mc.v_threshold)
        throw std::invalid_argument(
            "separation speed is at or below the configured threshold");
    for (int j = 0; j < K; ++j)
        for (int l = j + 1; l < K; ++l)
            if (std::abs(mc.params[j].x0 - mc.params[l].x0) < 8.0 / mc.h_star)
                throw std::invalid_argument(
                    "solitons start closer than 8 / h_star");

    const Grid& g = mc.grid;
    const double rho = rep.lambda.real();
    const SolitonParams& p0 = mc.params.front();

    ComplexField dir0 = real_direction(rep.Zgrow);
    ComplexField dir = sample_field_on(dir0, g, p0.x0);
    const double n = norm_l2(dir);
    if (n == 0) throw std::invalid_argument("perturbation direction vanishes");
    const cplx rot = std::exp(I * p0.theta0);
    for (auto& z : dir.v) z = rot * z / n;

    SolitonParams q0 = p0;
    q0.x0 = 0;
    q0.theta0 = 0;
    const double eps_eff =
        mc.epsilon_target > 0
            ? mc.epsilon_target
            : (cfg.epsilon > 0
                   ? cfg.epsilon
                   : 1e-2 * norm_l2(soliton_profile(q0, rep.grid)));
    const double t_max = cfg.t_max > 0 ? cfg.t_max : 12.0 / rho;
    const double check = cfg.check_every > 0 ? cfg.check_every : 0.05 / rho;

    MultiEscapeRecord rec;
    rec.a = mc.a;

    ComplexField u = multi_profile(mc.params, g, 0.0);
    for (int j = 0; j < g.N; ++j) u.v[j] += mc.a * dir.v[j];

    auto check_fit = [&](double t) {
        const MultiModulationFit fit = multi_modulation_distance(u, mc.params, t);
        Rvec comps(K);
        for (int j = 0; j < K; ++j) comps[j] = fit.components[j].distance;
        rec.trace.emplace_back(t, comps, fit.distance);
        for (int j = 1; j < K; ++j)
            rec.max_unperturbed_window =
                std::max(rec.max_unperturbed_window, comps[j]);
        return fit.distance;
    };

    rec.initial_distance = check_fit(0.0);

    double t = 0;
    while (t < t_max) {
        bool collided = false;
        for (int j = 0; j < K && !collided; ++j)
            for (int l = j + 1; l < K; ++l) {
                const double sep = std::abs((mc.params[j].x0 + mc.params[j].c * t) -
                                            (mc.params[l].x0 + mc.params[l].c * t));
                if (sep < 8.0 / mc.h_star) collided = true;
            }
        if (collided) {
            rec.note = "separation violated";
            break;
        }

        const double t_next = std::min(t_max, t + check);
        EvolutionConfig evo = cfg.evo;
        evo.t_start = t;
        evo.t_end = t_next;
        evo.log_every = 0;
        ComplexField state{g, u.v};
        const Trajectory traj = evolve_u(state, p0, evo);
        u.v = traj.states.back();
        const bool blew = traj.blew_up;
        t = blew ? traj.t_blowup : t_next;

        const double total = check_fit(t);
        if (total >= eps_eff) {
            rec.t_exit = t;
            rec.exit_distance = total;
            break;
        }
        if (blew) {
            rec.t_exit = t;
            rec.exit_distance = total;
            break;
        }
    }
    return rec;
}

InteractionDecay interaction_decay(const MultiConfig& mc, const Grid& g,
                                   const Rvec& t_list) {
    const int K = static_cast<int>(mc.params.size());
    if (K == 0) throw std::invalid_argument("empty multi config");
    InteractionDecay out;
    out.t = t_list;
    out.floor_rate = mc.h_star * mc.v_star;
    if (K == 1) {
        out.cross_norm.assign(t_list.size(), 0.0);
        out.pair_norm.assign(t_list.size(), 0.0);
        return out;
    }
    if (mc.v_star == 0)
        throw std::invalid_argument(
            "interaction decay needs distinct speeds (v_star = 0)");

    const SolitonParams& p0 = mc.params.front();
    const double s = p0.sigma_eff();
    const double b = p0.equation == Equation::DNLS_b ? p0.b : 0.0;
    Fft fft(g.N);
    auto nonlin = [&](const Cvec& u) {
        const Cvec ux = spectral_derivative(fft, g, u, 1);
        Cvec f(g.N);
        for (int j = 0; j < g.N; ++j) {
            const double M = std::norm(u[j]);
            f[j] = I * std::pow(M, s) * ux[j];
            if (b != 0.0) f[j] += b * M * M * u[j];
        }
        return f;
    };

    for (double t : t_list) {
        std::vector<Cvec> R(K);
        Cvec sum(g.N, cplx{0, 0});
        for (int j = 0; j < K; ++j) {
            R[j] = traveling_soliton(mc.params[j], g, t).v;
            for (int i = 0; i < g.N; ++i) sum[i] += R[j][i];
        }
        Cvec cross = nonlin(sum);
        for (int j = 0; j < K; ++j) {
            const Cvec fj = nonlin(R[j]);
            for (int i = 0; i < g.N; ++i) cross[i] -= fj[i];
        }
        double cn = 0;
        for (const auto& z : cross) cn += std::norm(z);
        out.cross_norm.push_back(std::sqrt(cn * g.dx()));

        double pn = 0;
        for (int j = 0; j < K; ++j)
            for (int l = j + 1; l < K; ++l) {
                double s2 = 0;
                for (int i = 0; i < g.N; ++i)
                    s2 += std::norm(R[j][i] * R[l][i]);
                pn = std::max(pn, std::sqrt(s2 * g.dx()));
            }
        out.pair_norm.push_back(pn);
    }

    std::vector<std::pair<double, double>> pts;
    const double top =
        *std::max_element(out.cross_norm.begin(), out.cross_norm.end());
    for (size_t i = 0; i < t_list.size(); ++i)
        if (out.cross_norm[i] > 1e-13 * top)
            pts.emplace_back(std::abs(t_list[i]), out.cross_norm[i]);
    out.fitted_rate = -fit_log_slope(pts);
    return out;
}

}  // namespace dnls
