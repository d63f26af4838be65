#pragma once

#include "dnls/types.hpp"

namespace dnls {

// Uniform periodic grid on [-L/2, L/2), x_j = -L/2 + j L/N. The time step
// rides along so one struct describes the whole discretization; dt = 0 means
// "not chosen yet".
struct Grid {
    double L = 0.0;
    int N = 0;
    double dt = 0.0;

    double dx() const { return L / N; }
    Rvec x() const;
    // FFT wavenumber layout 2*pi*[0,1,..,N/2-1,-N/2,..,-1]/L.
    Rvec k() const;
};

// N must be a power of two (>= 16), L > 0.
Grid make_grid(double L, int N, double dt = 0.0);

// Box for which the truncated tail e^{-hL/4}, amplified by (pi N/L)^2 under
// two spectral derivatives, stays below the 1e-8 residual gates. The naive
// 80/h minimum leaves a ~5e-8 floor at N = 2048; 140/h clears it with room.
double suggested_box(double h);

struct ComplexField {
    Grid grid;
    Cvec v;
};

ComplexField make_field(const Grid& g);

double norm_l2(const ComplexField& f);
double norm_sup(const ComplexField& f);
double norm_h1(const ComplexField& f);
double norm_h2(const ComplexField& f);
// int a * conj(b) dx
cplx inner_l2(const ComplexField& a, const ComplexField& b);

}  // namespace dnls
