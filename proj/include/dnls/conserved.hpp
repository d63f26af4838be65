#pragma once

#include <Eigen/Dense>

#include "dnls/grid.hpp"
#include "dnls/params.hpp"

namespace dnls {

// E = 1/2 ||u_x||^2 + (1/4) Im int |u|^2 u_x conj(u) - (b/6) ||u||_6^6   (DNLS_b)
// E = 1/2 ||u_x||^2 + (1/(2 sigma+2)) Im int |u|^{2 sigma} u_x conj(u)   (gDNLS)
double energy(const ComplexField& u, const SolitonParams& p);
// Q = 1/2 ||u||^2
double mass(const ComplexField& u);
// P = -1/2 Im int u_x conj(u)
double momentum(const ComplexField& u);
// S_{omega,c} = E + omega Q + c P
double action(const ComplexField& u, const SolitonParams& p);

enum class Verdict { Stable, Unstable, Inconclusive };

struct StabilityReport {
    double E = 0, Q = 0, P = 0, S = 0;
    double d = 0;                       // d(omega, c) = S at the soliton
    Eigen::Matrix2d d2;                 // [[Q_w, Q_c], [P_w, P_c]]
    int p_count = 0;
    int n_count = 0;
    Verdict verdict = Verdict::Inconclusive;
    double fd_step = 0;
    bool degenerate = false;            // |det d2| < 1e-6 at the sampled scale
};

struct DMatrixResult {
    Eigen::Matrix2d d2;
    double d = 0;
    int p_count = 0;
    double fd_step = 0;
};

// Central differences of (Q, P) of the profile in (omega, c), Richardson
// checked at step/2; the step shrinks automatically near the admissible
// boundary. fd_step <= 0 picks 1e-4 * max(1, |omega|, |c|).
DMatrixResult d_matrix(const SolitonParams& p, double fd_step = 0);

// Negative eigenvalues of H below -1e-6 * scale, excluding the two
// symmetry-kernel modes (|mu| < 1e-4 * scale window). More than 2 near-zero
// modes means the grid does not resolve the kernel: error.
int n_of_H(const SolitonParams& p, const Grid& g);

// GSS parity rule on a filled report: p == n -> Stable, n - p odd ->
// Unstable, otherwise (or degenerate d2) Inconclusive.
Verdict gss_classify(const StabilityReport& rep);

// Convenience: profile quantities + d_matrix + n_of_H + verdict in one go.
StabilityReport make_stability_report(const SolitonParams& p, const Grid& g);

}  // namespace dnls
