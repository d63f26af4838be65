#pragma once

#include "dnls/grid.hpp"
#include "dnls/params.hpp"

namespace dnls {

// phi = exp((i/2) int_{-inf}^x |u|^{2 sigma_eff}) u and psi = e^{iG} u_x,
// which equals d_x phi - (i/2) |phi|^{2 sigma_eff} phi identically.
struct GaugePair {
    ComplexField phi;
    ComplexField psi;
};

// Warns (via invalid_argument on hard failure only) when u is not localized:
// tail above 1e-8 leaves the prefix integral anchored wrong.
GaugePair to_gauge(const ComplexField& u, const SolitonParams& p);

ComplexField from_gauge(const GaugePair& pair, const SolitonParams& p);

// Right-hand sides of i phi_t + phi_xx = P, i psi_t + psi_xx = Q.
// DNLS_b:  P = i phi^2 conj(psi) - b |phi|^4 phi
//          Q = -i psi^2 conj(phi) - 3 b |phi|^4 psi - 2 b |phi|^2 phi^2 conj(psi)
// gDNLS:   P = i s |phi|^{2(s-1)} phi^2 conj(psi) - s(s-1) phi J
//          Q = -i s |phi|^{2(s-1)} psi^2 conj(phi) - s(s-1) psi J
//          with J = int_{-inf}^x |phi|^{2(s-2)} Im(psi^2 conj(phi)^2) dy.
// sigma outside {1, 2} u [5/2, inf) is outside the Lipschitz regime: the
// warning lands in *warning (not fatal).
struct GaugeRhs {
    ComplexField P;
    ComplexField Q;
};
GaugeRhs gauge_nonlinearity(const GaugePair& pair, const SolitonParams& p,
                            std::string* warning = nullptr);

// ||psi - (phi_x - (i/2)|phi|^{2s} phi)||_inf, the constraint drift.
double gauge_constraint_residual(const GaugePair& pair, const SolitonParams& p);

}  // namespace dnls
