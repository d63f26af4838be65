#pragma once

#include <map>

#include "dnls/operators.hpp"

namespace dnls {

// W(t) = sum_{k=1..N0} e^{-rho k t} sum_{0<=j<=k} (A_{jk} cos(j theta t)
//        + B_{jk} sin(j theta t)), the slow-manifold profile along the
// unstable direction. (A_11, B_11) = a (Y1, Y2).
struct ProfileExpansion {
    SolitonParams params;
    Grid grid;
    double a = 0;
    int N0 = 1;
    cplx lambda{0, 0};  // rho + i theta from the spectrum report
    std::map<std::pair<int, int>, PairField> A, B;  // keyed (j, k)
};

// The real-pair nonlinearity oriented so the co-moving dynamics reads
// d_t v + L v = M(v) exactly (checked in tests against the full equation).
// Quadratic valuation: M(0) is the stationary residual scale, the linear
// part cancels against L.
PairField nonlinear_M(const PairField& v, const SolitonParams& p);

// Quadratic part by even polarization (M(e v) + M(-e v) - 2 M(0)) / (2 e^2).
PairField nonlinear_M2(const PairField& v, const SolitonParams& p,
                       double eps = 1e-3);

// N0 = 1: W = a Y. N0 = 2: project M2(cos(ph) Y1 + sin(ph) Y2) over 8
// equispaced formal phases onto {1, cos 2ph, sin 2ph} and solve
// (L - 2 rho) A_02 = a^2 S_0, (L - 2 lambda)(A_22 + i B_22) = a^2 (S_c + i S_s).
// The j = 1 projections must vanish; shifts must clear the retained spectrum
// by 1e-4 or a ResonanceError is thrown.
ProfileExpansion build_W(const SpectrumReport& rep, double a, int N0);

PairField eval_W(const ProfileExpansion& ex, double t);
PairField eval_W_dt(const ProfileExpansion& ex, double t);  // analytic d/dt

// V1(t) = e^{i omega t} W(t, x - c t), U1 = R1 + V1.
struct DressedProfiles {
    ComplexField V1;
    ComplexField U1;
};
DressedProfiles dress_profile(const ProfileExpansion& ex, const SolitonParams& p,
                              const Grid& g, double t);

// Discrete H^2 norm of i d_t U1 + d_xx U1 + i |U1|^{2 sigma_eff} d_x U1
// + b |U1|^4 U1 with the time derivative taken analytically through the
// ansatz (never finite differences).
double err_residual(const ProfileExpansion& ex, const SolitonParams& p,
                    const Grid& g, double t);

}  // namespace dnls
