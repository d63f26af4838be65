#pragma once

#include "dnls/fft.hpp"
#include "dnls/grid.hpp"
#include "dnls/params.hpp"

namespace dnls {

// Phi^2(x) for DNLS_b, Phi^{2 sigma}(x) for gDNLS_sigma. Even, positive,
// decaying; algebraic branch 4c/((cx)^2 + gamma) at the endpoint c = 2 sqrt(omega).
double amplitude_squared(const SolitonParams& p, double x);

// Profile centered at 0 with theta0 = 0:
//   phi = Phi * exp(i c x/2 - (i/4) int_{-L/2}^x Phi^2)          (DNLS_b)
//   phi = Phi * exp(i c x/2 - (i/(2s+2)) int_{-L/2}^x Phi^{2s})  (gDNLS)
// The exponent carries an explicit imaginary unit; a real exponent would
// contradict |phi| = Phi.
ComplexField soliton_profile(const SolitonParams& p, const Grid& g);

// || -phi_xx + omega phi + i c phi_x - i |phi|^{2 sigma_eff} phi_x
//    - b |phi|^4 phi ||_inf  (b term only for DNLS_b)
double stationary_residual(const ComplexField& phi, const SolitonParams& p);

// R(t) = e^{i theta0} e^{i omega t} phi(x - x0 - c t), fractional shifts by
// trigonometric interpolation. Errors if the center drifts to within
// margin 35/h of the box edge.
ComplexField traveling_soliton(const SolitonParams& p, const Grid& g, double t);

// Sum of traveling solitons. Errors when centers come closer than
// 8/min(h_j, h_k) or any center violates the box margin.
ComplexField multi_profile(const std::vector<SolitonParams>& ps, const Grid& g,
                           double t);

}  // namespace dnls
