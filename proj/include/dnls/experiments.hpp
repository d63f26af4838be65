#pragma once

#include <string>
#include <tuple>

#include "dnls/evolve.hpp"
#include "dnls/modulation.hpp"
#include "dnls/operators.hpp"

namespace dnls {

struct EscapeConfig {
    double epsilon = 0;    // 0 picks 1e-2 * ||phi||
    double t_max = 0;      // 0 picks 12 / rho
    double check_every = 0;  // modulation checks, 0 picks 0.05 / rho
    EvolutionConfig evo;
};

struct EscapeRecord {
    double a = 0;
    double initial_distance = 0;
    double t_exit = -1;      // -1: never left the epsilon ball
    double exit_distance = 0;
    double fitted_rate = 0;  // early-time growth of ||u - R1||
    double dir_h2 = 0;       // H^2 norm of the normalized perturbation
    std::vector<std::pair<double, double>> trace;  // (t, modulation distance)
};

// u0 = R1(0) + a * real part of the growing quadruple partner of Z,
// L2-normalized; evolve until the modulation distance reaches epsilon.
std::vector<EscapeRecord> escape_experiment(const SolitonParams& p,
                                            const SpectrumReport& rep,
                                            const Rvec& a_list, double epsilon,
                                            const EscapeConfig& cfg);

struct MultiConfig {
    std::vector<SolitonParams> params;
    double v_star = 0;      // (1/9) min pairwise |c_j - c_k|
    double h_star = 0;      // min(min h_j, 2 alpha)
    double a = 0;           // perturbation amplitude on component 0
    double epsilon_target = 0;
    double v_threshold = 0; // required separation speed; the true threshold is
                            // unknown, so it stays a config value
    Grid grid;              // evolution box (defaulted by make_multi_config)
};

// Fills v_star / h_star from the parameter list and the report's alpha_fit
// and sizes the default box; errors when two components share a speed.
MultiConfig make_multi_config(const std::vector<SolitonParams>& ps,
                              const SpectrumReport& rep, double a,
                              double epsilon_target);

struct MultiEscapeRecord {
    double a = 0;
    double initial_distance = 0;
    double t_exit = -1;
    double exit_distance = 0;
    // (t, per-component window distance, total distance)
    std::vector<std::tuple<double, Rvec, double>> trace;
    double max_unperturbed_window = 0;  // sup over t of the untouched components
    std::string note;                   // "separation violated" on abort
};

MultiEscapeRecord multi_escape_experiment(const MultiConfig& mc,
                                          const SpectrumReport& rep,
                                          const EscapeConfig& cfg);

// || f(R) - sum_j f(R_j) ||_L2 over t_list, f the equation nonlinearity;
// no evolution involved. Fits log of the cross norm against t: the rate is
// at least h_* v_* for separating pairs. Errors when v_star = 0 with K >= 2;
// K = 1 returns identically zero cross terms.
struct InteractionDecay {
    Rvec t;
    Rvec cross_norm;
    Rvec pair_norm;         // max_{j<k} ||R_j R_k||_L2 at each t
    double fitted_rate = 0;
    double floor_rate = 0;  // h_* v_*
};
InteractionDecay interaction_decay(const MultiConfig& mc, const Grid& g,
                                   const Rvec& t_list);

}  // namespace dnls
