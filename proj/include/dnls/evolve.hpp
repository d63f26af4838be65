#pragma once

#include "dnls/gauge.hpp"
#include "dnls/grid.hpp"
#include "dnls/operators.hpp"
#include "dnls/params.hpp"

namespace dnls {

enum class Scheme { MoL_RK4_spectral, SplitStep_gauge };

struct EvolutionConfig {
    Scheme scheme = Scheme::MoL_RK4_spectral;
    double dt = 0.0;          // 0 picks 0.2 dx^2; |dt| capped at 0.5 dx^2
    double t_start = 0.0;
    double t_end = 0.0;       // t_end < t_start runs backward (dt < 0)
    double dealias = 2.0 / 3.0;  // kept fraction of modes; 0 disables
    int log_every = 50;
    int reimpose_every = 100;    // gauge constraint projection cadence
};

struct LogRow {
    double t;
    double mass, energy, momentum;
    double sup;
    double constraint;  // gauge scheme only, 0 otherwise
};

struct Trajectory {
    Grid grid;
    Rvec times;                   // checkpoint times
    std::vector<Cvec> states;     // u at checkpoints (gauge runs store u too)
    std::vector<LogRow> logs;
    bool blew_up = false;
    double t_blowup = 0.0;
};

// Fourth-order integrating-factor RK4 in Fourier space for
// u_t = i u_xx - |u|^{2 sigma_eff} u_x + i b |u|^4 u, with 2/3 dealiasing of
// the nonlinear terms. Blow-up (sup norm beyond 1e3 x initial, or non
// finite) stops the run and marks the trajectory; callers that need the
// hard error rethrow as BlowUpError.
Trajectory evolve_u(const ComplexField& u0, const SolitonParams& p,
                    EvolutionConfig cfg);

// Same integrator on the coupled (phi, psi) system with right-hand sides
// from gauge_nonlinearity; the constraint psi = phi_x - (i/2)|phi|^{2s} phi
// is re-imposed every reimpose_every steps and its drift logged. Checkpoints
// store u = from_gauge(phi).
Trajectory evolve_gauge(const GaugePair& pair0, const SolitonParams& p,
                        EvolutionConfig cfg);

// RK4 on the dense block operator for d_t Y = -op Y. dt <= 0 picks
// 2.5 / max|eigenvalue estimate|; errors when dt exceeds the imaginary-axis
// stability limit.
struct LinearTrajectory {
    Rvec times;
    std::vector<PairField> states;
};
LinearTrajectory evolve_linearized(const PairField& Y0, const BlockOperator& op,
                                   double t_end, double dt = 0.0,
                                   int store_every = 10);

}  // namespace dnls
