#pragma once

#include "dnls/grid.hpp"
#include "dnls/operators.hpp"

namespace dnls {

// Branch data for (-d^2/dx^2 - mu)^{-1} off the essential spectrum [0, inf):
// sqrt_mu = |mu|^{1/2} e^{i arg/2} with arg in (0, 2 pi], so Im sqrt_mu > 0
// and the kernel decays. tau = |mu| sin^2(arg/2) is the squared decay rate,
// C_bound = sin(arg/2) in (0, 1].
struct KernelSpec {
    cplx mu;
    cplx sqrt_mu;
    double tau = 0;
    double C_bound = 0;
};

// Errors when mu lies on [0, inf) (no decaying branch).
KernelSpec make_kernel_spec(cplx mu);

cplx g_mu(const KernelSpec& spec, double x);  // (i / (2 sqrt_mu)) e^{i sqrt_mu |x|}
ComplexField g_mu(const KernelSpec& spec, const Grid& g);

// u with (-u'' - mu u) = f, via the multiplier 1/(k^2 - mu), which is the
// exact Fourier image of the periodized kernel. Sampling g_mu on the grid
// instead aliases at ~5e-4 (kink at 0, algebraic mode decay); the multiplier
// satisfies the ODE to round-off. Errors when mu is within 1e-8 of a grid
// value of k^2; flags poorly localized f (tail at |x| >= L/4 above 1e-8 of
// the sup) through *warning.
ComplexField convolve_kernel(const KernelSpec& spec, const ComplexField& f,
                             std::string* warning = nullptr);

// L' = i P L P^{-1}, P = [[1, i], [1, -i]] blockwise; Sp(L') = i Sp(L).
BlockOperator conjugate_prime(const BlockOperator& op);

}  // namespace dnls
