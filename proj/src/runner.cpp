#include "dnls/runner.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "dnls/conserved.hpp"
#include "dnls/experiments.hpp"
#include "dnls/io.hpp"
#include "dnls/profile_expansion.hpp"
#include "dnls/soliton.hpp"

namespace dnls {

namespace {

struct HelpShown {};

const char* command_name(Command c) {
    switch (c) {
        case Command::soliton: return "soliton";
        case Command::classify: return "classify";
        case Command::spectrum: return "spectrum";
        case Command::profile: return "profile";
        case Command::evolve: return "evolve";
        case Command::escape: return "escape";
        case Command::multi_escape: return "multi-escape";
        case Command::interaction: return "interaction";
    }
    return "?";
}

Equation parse_equation(const std::string& s) {
    if (s == "dnls_b" || s == "DNLS_b") return Equation::DNLS_b;
    if (s == "gdnls_sigma" || s == "gDNLS_sigma" || s == "gdnls")
        return Equation::gDNLS_sigma;
    throw std::invalid_argument("unknown equation '" + s +
                                "' (expected dnls_b or gdnls_sigma)");
}

// "omega=1.25,c=-2,x0=-10" on top of the shared equation settings
SolitonParams parse_component(const std::string& spec, const SolitonParams& base) {
    SolitonParams p = base;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("soliton component entry '" + item +
                                        "' is not key=value");
        const std::string key = item.substr(0, eq);
        const double val = std::stod(item.substr(eq + 1));
        if (key == "omega") p.omega = val;
        else if (key == "c") p.c = val;
        else if (key == "x0") p.x0 = val;
        else if (key == "theta0") p.theta0 = val;
        else
            throw std::invalid_argument(
                "unknown soliton component key '" + key +
                "' (expected omega, c, x0, theta0)");
    }
    return p;
}

Grid profile_grid(const RunConfig& cfg, const SolitonParams& p) {
    const double L = cfg.L > 0 ? cfg.L : suggested_box(p.h());
    return make_grid(L, cfg.N);
}

nlohmann::json params_json(const SolitonParams& p) {
    nlohmann::json j;
    j["equation"] = equation_name(p.equation);
    if (p.equation == Equation::DNLS_b) j["b"] = p.b;
    else j["sigma"] = p.sigma;
    j["omega"] = p.omega;
    j["c"] = p.c;
    j["theta0"] = p.theta0;
    j["x0"] = p.x0;
    return j;
}

nlohmann::json config_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["command"] = command_name(cfg.command);
    j["params"] = params_json(cfg.params);
    if (!cfg.multi.empty()) {
        j["components"] = nlohmann::json::array();
        for (const auto& p : cfg.multi) j["components"].push_back(params_json(p));
    }
    j["L"] = cfg.L;
    j["N"] = cfg.N;
    j["evolution"] = {
        {"scheme", cfg.evo.scheme == Scheme::SplitStep_gauge ? "gauge" : "rk4"},
        {"dt", cfg.evo.dt},
        {"dealias", cfg.evo.dealias},
        {"log_every", cfg.evo.log_every},
        {"reimpose_every", cfg.evo.reimpose_every}};
    j["t_end"] = cfg.t_end;
    j["N0"] = cfg.N0;
    j["a"] = cfg.a;
    j["n_amplitudes"] = cfg.n_amplitudes;
    j["epsilon"] = cfg.epsilon;
    j["v_threshold"] = cfg.v_threshold;
    j["outdir"] = cfg.outdir;
    j["seed"] = cfg.seed;
    if (!cfg.config_path.empty()) j["config_file"] = cfg.config_path;
    return j;
}

nlohmann::json spectrum_json(const SpectrumReport& rep) {
    nlohmann::json j;
    j["eigenvalues"] = nlohmann::json::array();
    for (const auto& w : rep.eigenvalues)
        j["eigenvalues"].push_back({w.real(), w.imag()});
    j["lambda"] = {rep.lambda.real(), rep.lambda.imag()};
    j["a1_holds"] = rep.a1_holds;
    if (!rep.note.empty()) j["note"] = rep.note;
    j["alpha_fit"] = rep.alpha_fit;
    j["essential_band"] = rep.essential_band;
    j["scale"] = rep.scale;
    j["grid"] = {{"L", rep.grid.L}, {"N", rep.grid.N}};
    return j;
}

void write_pair_csv(const std::filesystem::path& path, const PairField& f) {
    std::string body =
        csv_row({"x", "Re v+", "Im v+", "Re v-", "Im v-"});
    const Rvec x = f.grid.x();
    for (int j = 0; j < f.grid.N; ++j)
        body += csv_row({format_double(x[j]), format_double(f.p[j].real()),
                         format_double(f.p[j].imag()),
                         format_double(f.m[j].real()),
                         format_double(f.m[j].imag())});
    atomic_write(path, body);
}

void write_trajectory(const std::filesystem::path& root, const Trajectory& traj) {
    std::string body =
        csv_row({"t", "mass", "energy", "momentum", "sup", "constraint"});
    for (const auto& row : traj.logs)
        body += csv_row({format_double(row.t), format_double(row.mass),
                         format_double(row.energy), format_double(row.momentum),
                         format_double(row.sup), format_double(row.constraint)});
    atomic_write(root / "trajectory.csv", body);

    const std::filesystem::path dir = root / "checkpoints";
    std::filesystem::create_directories(dir);
    nlohmann::json index;
    index["checkpoints"] = nlohmann::json::array();
    for (size_t i = 0; i < traj.states.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "checkpoint_%05zu.csv", i);
        ComplexField f{traj.grid, traj.states[i]};
        write_field_csv(dir / name, f, "Re u", "Im u");
        index["checkpoints"].push_back(
            {{"file", std::string("checkpoints/") + name},
             {"t", traj.times[i]}});
    }
    index["blew_up"] = traj.blew_up;
    if (traj.blew_up) index["t_blowup"] = traj.t_blowup;
    index["grid"] = {{"L", traj.grid.L}, {"N", traj.grid.N}};
    atomic_write(root / "checkpoints.json", index.dump(2) + "\n");
}

SpectrumReport centered_spectrum(const SolitonParams& p, const Grid& g) {
    SolitonParams q = p;
    q.x0 = 0;
    q.theta0 = 0;
    return eigen_spectrum(assemble_L(q, g, OperatorForm::L_plain));
}

int run_soliton(const RunConfig& cfg, const std::filesystem::path& root,
                nlohmann::json& manifest) {
    const Grid g = profile_grid(cfg, cfg.params);
    const ComplexField phi = soliton_profile(cfg.params, g);
    const double resid = stationary_residual(phi, cfg.params);
    write_field_csv(root / "soliton.csv", phi);
    nlohmann::json j;
    j["params"] = params_json(cfg.params);
    j["grid"] = {{"L", g.L}, {"N", g.N}};
    j["stationary_residual"] = resid;
    j["mass"] = mass(phi);
    j["energy"] = energy(phi, cfg.params);
    j["momentum"] = momentum(phi);
    j["peak_amplitude_sq"] = amplitude_squared(cfg.params, 0.0);
    atomic_write(root / "soliton.json", j.dump(2) + "\n");
    manifest["outputs"] = {"soliton.csv", "soliton.json"};
    return 0;
}

int run_classify(const RunConfig& cfg, const std::filesystem::path& root,
                 nlohmann::json& manifest) {
    const Grid g = profile_grid(cfg, cfg.params);
    const StabilityReport rep = make_stability_report(cfg.params, g);
    nlohmann::json j;
    j["params"] = params_json(cfg.params);
    j["E"] = rep.E;
    j["Q"] = rep.Q;
    j["P"] = rep.P;
    j["S"] = rep.S;
    j["d"] = rep.d;
    j["d2"] = {{rep.d2(0, 0), rep.d2(0, 1)}, {rep.d2(1, 0), rep.d2(1, 1)}};
    j["p_count"] = rep.p_count;
    j["n_count"] = rep.n_count;
    j["fd_step"] = rep.fd_step;
    j["degenerate"] = rep.degenerate;
    j["verdict"] = rep.verdict == Verdict::Stable     ? "Stable"
                   : rep.verdict == Verdict::Unstable ? "Unstable"
                                                      : "Inconclusive";
    atomic_write(root / "classify.json", j.dump(2) + "\n");
    manifest["outputs"] = {"classify.json"};
    return 0;
}

int run_spectrum(const RunConfig& cfg, const std::filesystem::path& root,
                 nlohmann::json& manifest) {
    const Grid g = profile_grid(cfg, cfg.params);
    const SpectrumReport rep = centered_spectrum(cfg.params, g);
    atomic_write(root / "spectrum.json", spectrum_json(rep).dump(2) + "\n");
    manifest["outputs"] = {"spectrum.json"};
    if (rep.a1_holds) {
        write_pair_csv(root / "spectrum_Z.csv", rep.Z);
        manifest["outputs"].push_back("spectrum_Z.csv");
    }
    return 0;
}

int run_profile(const RunConfig& cfg, const std::filesystem::path& root,
                nlohmann::json& manifest) {
    const Grid g = profile_grid(cfg, cfg.params);
    const SpectrumReport rep = centered_spectrum(cfg.params, g);
    if (!rep.a1_holds)
        throw std::invalid_argument(
            "profile expansion needs an unstable eigenvalue; " + rep.note);
    const ProfileExpansion ex = build_W(rep, cfg.a, cfg.N0);
    const double rho = rep.lambda.real();

    nlohmann::json j;
    j["params"] = params_json(cfg.params);
    j["lambda"] = {rep.lambda.real(), rep.lambda.imag()};
    j["a"] = cfg.a;
    j["N0"] = cfg.N0;
    j["coefficient_decay"] = nlohmann::json::array();
    for (const auto& [key, field] : ex.A)
        j["coefficient_decay"].push_back({{"kind", "A"},
                                          {"j", key.first},
                                          {"k", key.second},
                                          {"alpha", decay_fit(field)}});

    std::string body = csv_row({"t", "err_h2"});
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i <= 12; ++i) {
        const double t = (2.0 + i * (4.0 / 12.0)) / rho;
        const double e = err_residual(ex, cfg.params, g, t);
        body += csv_row({format_double(t), format_double(e)});
        pts.emplace_back(t, e);
    }
    atomic_write(root / "profile_err.csv", body);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [t, e] : pts) {
        const double ly = std::log(e);
        sx += t; sy += ly; sxx += t * t; sxy += t * ly;
    }
    const double n = static_cast<double>(pts.size());
    j["err_decay_rate"] = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
    j["rho"] = rho;
    atomic_write(root / "profile.json", j.dump(2) + "\n");
    manifest["outputs"] = {"profile.json", "profile_err.csv"};
    return 0;
}

int run_evolve(const RunConfig& cfg, const std::filesystem::path& root,
               nlohmann::json& manifest) {
    const Grid g = profile_grid(cfg, cfg.params);
    EvolutionConfig evo = cfg.evo;
    evo.t_start = 0;
    evo.t_end = cfg.t_end;

    Trajectory traj;
    if (evo.scheme == Scheme::SplitStep_gauge) {
        const ComplexField u0 = traveling_soliton(cfg.params, g, 0.0);
        const GaugePair pair0 = to_gauge(u0, cfg.params);
        traj = evolve_gauge(pair0, cfg.params, evo);
    } else {
        const ComplexField u0 = traveling_soliton(cfg.params, g, 0.0);
        traj = evolve_u(u0, cfg.params, evo);
    }
    write_trajectory(root, traj);
    manifest["outputs"] = {"trajectory.csv", "checkpoints.json", "checkpoints/"};

    if (evo.scheme == Scheme::SplitStep_gauge && !traj.states.empty()) {
        ComplexField uT{g, traj.states.back()};
        const GaugePair gp = to_gauge(uT, cfg.params);
        std::string body =
            csv_row({"x", "Re phi", "Im phi", "Re psi", "Im psi"});
        const Rvec x = g.x();
        for (int j = 0; j < g.N; ++j)
            body += csv_row({format_double(x[j]),
                             format_double(gp.phi.v[j].real()),
                             format_double(gp.phi.v[j].imag()),
                             format_double(gp.psi.v[j].real()),
                             format_double(gp.psi.v[j].imag())});
        atomic_write(root / "gauge_final.csv", body);
        manifest["outputs"].push_back("gauge_final.csv");
    }

    if (traj.blew_up) {
        manifest["error"] = "blow-up detected at t = " + format_double(traj.t_blowup);
        manifest["error_kind"] = "blow_up";
        return 3;
    }
    return 0;
}

int run_escape(const RunConfig& cfg, const std::filesystem::path& root,
               nlohmann::json& manifest) {
    const Grid g = profile_grid(cfg, cfg.params);
    const SpectrumReport rep = centered_spectrum(cfg.params, g);
    if (!rep.a1_holds)
        throw std::invalid_argument(
            "escape experiment needs an unstable eigenvalue; " + rep.note);

    Rvec a_list;
    for (int n = 0; n < cfg.n_amplitudes; ++n)
        a_list.push_back(cfg.a * std::pow(2.0, -n));

    EscapeConfig ecfg;
    ecfg.evo = cfg.evo;
    const auto records = escape_experiment(cfg.params, rep, a_list, cfg.epsilon, ecfg);

    std::string body = csv_row(
        {"a", "t_exit", "initial_distance", "exit_distance", "fitted_rate"});
    manifest["outputs"] = {"escape.csv"};
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        body += csv_row({format_double(r.a), format_double(r.t_exit),
                         format_double(r.initial_distance),
                         format_double(r.exit_distance),
                         format_double(r.fitted_rate)});
        nlohmann::json j;
        j["a"] = r.a;
        j["initial_distance"] = r.initial_distance;
        j["t_exit"] = r.t_exit;
        j["exit_distance"] = r.exit_distance;
        j["fitted_rate"] = r.fitted_rate;
        j["direction_h2"] = r.dir_h2;
        j["rho"] = rep.lambda.real();
        if (r.t_exit < 0) j["note"] = "epsilon not reached";
        j["trace"] = nlohmann::json::array();
        for (const auto& [t, d] : r.trace) j["trace"].push_back({t, d});
        char name[64];
        std::snprintf(name, sizeof name, "escape_run_%02zu.json", i);
        atomic_write(root / name, j.dump(2) + "\n");
        manifest["outputs"].push_back(name);
    }
    atomic_write(root / "escape.csv", body);
    return 0;
}

MultiConfig build_multi_config(const RunConfig& cfg, const SpectrumReport& rep) {
    MultiConfig mc = make_multi_config(cfg.multi, rep, cfg.a, cfg.epsilon);
    mc.v_threshold = cfg.v_threshold;
    if (cfg.L > 0) mc.grid = make_grid(cfg.L, cfg.N);
    return mc;
}

int run_multi_escape(const RunConfig& cfg, const std::filesystem::path& root,
                     nlohmann::json& manifest) {
    if (cfg.multi.empty())
        throw std::invalid_argument(
            "multi-escape needs at least one --soliton component");
    SolitonParams q0 = cfg.multi.front();
    q0.x0 = 0;
    q0.theta0 = 0;
    const Grid gs = make_grid(suggested_box(q0.h()), 2048);
    const SpectrumReport rep = centered_spectrum(q0, gs);
    if (!rep.a1_holds)
        throw std::invalid_argument(
            "multi escape needs an unstable eigenvalue on component 1; " +
            rep.note);

    const MultiConfig mc = build_multi_config(cfg, rep);
    EscapeConfig ecfg;
    ecfg.evo = cfg.evo;
    const MultiEscapeRecord rec = multi_escape_experiment(mc, rep, ecfg);

    std::string body = csv_row({"t", "per_component...", "total"});
    body.clear();
    {
        std::vector<std::string> head{"t"};
        for (size_t j = 0; j < cfg.multi.size(); ++j)
            head.push_back("window_" + std::to_string(j + 1));
        head.push_back("total");
        body = csv_row(head);
    }
    for (const auto& [t, comps, total] : rec.trace) {
        std::vector<std::string> row{format_double(t)};
        for (double d : comps) row.push_back(format_double(d));
        row.push_back(format_double(total));
        body += csv_row(row);
    }
    atomic_write(root / "multi_trace.csv", body);

    nlohmann::json j;
    j["a"] = rec.a;
    j["initial_distance"] = rec.initial_distance;
    j["t_exit"] = rec.t_exit;
    j["exit_distance"] = rec.exit_distance;
    j["max_unperturbed_window"] = rec.max_unperturbed_window;
    if (!rec.note.empty()) j["note"] = rec.note;
    j["v_star"] = mc.v_star;
    j["h_star"] = mc.h_star;
    j["alpha_fit"] = rep.alpha_fit;
    j["alpha_note"] =
        "h_star uses the grid-fitted decay rate alpha; it carries that fit's "
        "uncertainty";
    j["rho"] = rep.lambda.real();
    j["grid"] = {{"L", mc.grid.L}, {"N", mc.grid.N}};
    atomic_write(root / "multi_escape.json", j.dump(2) + "\n");
    manifest["outputs"] = {"multi_escape.json", "multi_trace.csv"};
    return 0;
}

int run_interaction(const RunConfig& cfg, const std::filesystem::path& root,
                    nlohmann::json& manifest) {
    if (cfg.multi.empty())
        throw std::invalid_argument(
            "interaction needs at least one --soliton component");
    SolitonParams q0 = cfg.multi.front();
    q0.x0 = 0;
    q0.theta0 = 0;
    const Grid gs = make_grid(suggested_box(q0.h()), 2048);
    const SpectrumReport rep = centered_spectrum(q0, gs);

    const MultiConfig mc = build_multi_config(cfg, rep);
    const double t_end = cfg.t_end > 0 ? cfg.t_end : 3.0;
    Rvec t_list;
    for (int i = 0; i <= 12; ++i) t_list.push_back(t_end * i / 12.0);
    const InteractionDecay dec = interaction_decay(mc, mc.grid, t_list);

    std::string body = csv_row({"t", "cross_norm", "pair_norm"});
    for (size_t i = 0; i < dec.t.size(); ++i)
        body += csv_row({format_double(dec.t[i]), format_double(dec.cross_norm[i]),
                         format_double(dec.pair_norm[i])});
    atomic_write(root / "interaction.csv", body);

    nlohmann::json j;
    j["fitted_rate"] = dec.fitted_rate;
    j["floor_rate"] = dec.floor_rate;
    j["v_star"] = mc.v_star;
    j["h_star"] = mc.h_star;
    j["alpha_fit"] = rep.alpha_fit;
    atomic_write(root / "interaction.json", j.dump(2) + "\n");
    manifest["outputs"] = {"interaction.csv", "interaction.json"};
    return 0;
}

}  // namespace

RunConfig parse_config(int argc, const char* const* argv) {
    CLI::App app{"Soliton laboratory for derivative NLS equations"};
    app.fallthrough();
    app.set_config("--config")->configurable(false);
    app.allow_config_extras(false);

    RunConfig cfg;
    std::string equation = "dnls_b";
    std::string scheme = "rk4";
    std::vector<std::string> components;

    app.add_option("--equation", equation,
                   "dnls_b (cubic-derivative + quintic) or gdnls_sigma");
    app.add_option("--b", cfg.params.b, "quintic coefficient (dnls_b)");
    app.add_option("--sigma", cfg.params.sigma, "nonlinearity power (gdnls)");
    app.add_option("--omega", cfg.params.omega, "frequency");
    app.add_option("--c", cfg.params.c, "speed");
    app.add_option("--x0", cfg.params.x0, "initial center");
    app.add_option("--theta0", cfg.params.theta0, "initial phase");
    app.add_option("--box-length", cfg.L, "domain length (0: auto 140/h)");
    app.add_option("--modes", cfg.N, "grid points (power of two)");
    app.add_option("--scheme", scheme, "rk4 | gauge");
    app.add_option("--dt", cfg.evo.dt, "time step (0: 0.2 dx^2)");
    app.add_option("--dealias", cfg.evo.dealias, "kept mode fraction");
    app.add_option("--log-every", cfg.evo.log_every, "steps between log rows");
    app.add_option("--reimpose-every", cfg.evo.reimpose_every,
                   "gauge constraint projection cadence");
    app.add_option("--t-end", cfg.t_end, "evolution horizon");
    app.add_option("--order", cfg.N0, "profile expansion order (1 or 2)");
    app.add_option("--a", cfg.a, "perturbation amplitude");
    app.add_option("--n-amplitudes", cfg.n_amplitudes, "escape sweep length");
    app.add_option("--epsilon", cfg.epsilon, "escape radius (0: 1e-2 ||phi||)");
    app.add_option("--v-threshold", cfg.v_threshold,
                   "required multi separation speed");
    app.add_option("--soliton", components,
                   "multi component, e.g. omega=1.25,c=-2,x0=-10 (repeat per "
                   "component)");
    app.add_option("--outdir", cfg.outdir, "output directory");
    app.add_option("--seed", cfg.seed, "rng seed recorded in the manifest");

    std::map<std::string, Command> names = {
        {"soliton", Command::soliton},       {"classify", Command::classify},
        {"spectrum", Command::spectrum},     {"profile", Command::profile},
        {"evolve", Command::evolve},         {"escape", Command::escape},
        {"multi-escape", Command::multi_escape},
        {"interaction", Command::interaction}};
    std::vector<CLI::App*> subs;
    for (const auto& [name, cmd] : names) {
        CLI::App* sub = app.add_subcommand(name, "");
        sub->configurable();
        subs.push_back(sub);
    }
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        throw HelpShown{};
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(e.what());
    }

    CLI::App* picked = nullptr;
    for (CLI::App* sub : subs)
        if (sub->parsed()) picked = sub;
    if (!picked) throw std::invalid_argument("missing command (see --help)");
    cfg.command = names.at(picked->get_name());

    cfg.params.equation = parse_equation(equation);
    if (scheme == "rk4" || scheme == "spectral")
        cfg.evo.scheme = Scheme::MoL_RK4_spectral;
    else if (scheme == "gauge")
        cfg.evo.scheme = Scheme::SplitStep_gauge;
    else
        throw std::invalid_argument("unknown scheme '" + scheme +
                                    "' (expected rk4 or gauge)");

    for (const auto& s : components)
        cfg.multi.push_back(parse_component(s, cfg.params));

    if (app.get_config_ptr()->count() > 0)
        cfg.config_path = app.get_config_ptr()->as<std::string>();

    const Validity v = validate_params(cfg.params);
    if (!v.ok) throw std::invalid_argument(v.message);
    for (const auto& p : cfg.multi) {
        const Validity vm = validate_params(p);
        if (!vm.ok) throw std::invalid_argument(vm.message);
    }
    return cfg;
}

int run(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    const fs::path root = output_root(cfg.outdir);
    fs::create_directories(root);

    nlohmann::json manifest;
    manifest["command"] = command_name(cfg.command);
    manifest["inputs"] = config_json(cfg);
    manifest["versions"] = version_info();
    manifest["seed"] = cfg.seed;
    {
        const auto now = std::chrono::system_clock::now();
        const std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char buf[64];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
        manifest["started_at"] = buf;
    }
    const auto t0 = std::chrono::steady_clock::now();

    int code = 0;
    try {
        switch (cfg.command) {
            case Command::soliton: code = run_soliton(cfg, root, manifest); break;
            case Command::classify: code = run_classify(cfg, root, manifest); break;
            case Command::spectrum: code = run_spectrum(cfg, root, manifest); break;
            case Command::profile: code = run_profile(cfg, root, manifest); break;
            case Command::evolve: code = run_evolve(cfg, root, manifest); break;
            case Command::escape: code = run_escape(cfg, root, manifest); break;
            case Command::multi_escape:
                code = run_multi_escape(cfg, root, manifest);
                break;
            case Command::interaction:
                code = run_interaction(cfg, root, manifest);
                break;
        }
    } catch (const BlowUpError& e) {
        manifest["error"] = e.what();
        manifest["error_kind"] = "blow_up";
        code = 3;
    } catch (const ResonanceError& e) {
        manifest["error"] = e.what();
        manifest["error_kind"] = "resonance";
        code = 4;
    } catch (const std::invalid_argument& e) {
        manifest["error"] = e.what();
        manifest["error_kind"] = "config";
        code = 2;
    } catch (const std::exception& e) {
        manifest["error"] = e.what();
        manifest["error_kind"] = "solver";
        code = 4;
    }

    const auto t1 = std::chrono::steady_clock::now();
    manifest["wall_time_s"] =
        std::chrono::duration<double>(t1 - t0).count();
    atomic_write(root / "manifest.json", manifest.dump(2) + "\n");

    if (code != 0 && manifest.contains("error"))
        std::cerr << "error: " << manifest["error"].get<std::string>() << "\n";
    return code;
}

int dnlslab_main(int argc, const char* const* argv) {
    try {
        const RunConfig cfg = parse_config(argc, argv);
        return run(cfg);
    } catch (const HelpShown&) {
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace dnls
