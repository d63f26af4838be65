#pragma once

#include "dnls/grid.hpp"

namespace dnls {

// Complex 1d FFT workspace for a fixed size. Plan creation/destruction is
// serialized behind a global mutex (FFTW requirement); execution is
// re-entrant on the instance's own buffers, so keep one instance per
// trajectory/thread.
class Fft {
  public:
    explicit Fft(int N);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    int size() const { return N_; }
    Cvec forward(const Cvec& in) const;   // unnormalized sum
    Cvec inverse(const Cvec& in) const;   // includes the 1/N

  private:
    int N_;
    void* fwd_;
    void* bwd_;
};

// n-th spectral derivative. The Nyquist mode is zeroed for odd n (it carries
// no sign information for odd powers of ik) and kept for even n.
Cvec spectral_derivative(const Fft& fft, const Grid& g, const Cvec& f, int n);

// F_j ~ int_{-L/2}^{x_j} f dy by the spectral antiderivative: divide the
// nonzero modes by ik (Nyquist read as +pi N/L), add the mean ramp, anchor
// F_0 = 0. For localized f this is int_{-inf}^x up to the truncated tail.
// Cumulative trapezoid here costs ~4e-3 in the downstream stationary
// residual; this form costs ~1e-12.
Cvec prefix_integral(const Fft& fft, const Grid& g, const Cvec& f);

// 2/3-rule: zero modes with |freq index| > N/3.
void dealias_hat(Cvec& hat);

// Evaluate the trigonometric interpolant of samples f on grid g at x + shift
// (fractional shifts allowed): multiply modes by e^{-ik*shift}.
Cvec spectral_shift(const Fft& fft, const Grid& g, const Cvec& f, double shift);

// Resample a field onto a finer/coarser power-of-two grid with the same L.
ComplexField spectral_resample(const ComplexField& f, int N_new);

}  // namespace dnls
