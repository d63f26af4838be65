#include "dnls/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

namespace dnls {

namespace {
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Fft::Fft(int N) : N_(N) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto* in = fftw_alloc_complex(N);
    auto* out = fftw_alloc_complex(N);
    fwd_ = fftw_plan_dft_1d(N, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(N, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

// std::complex<double> is layout compatible with fftw_complex; execute on
// caller buffers via the new-array interface (FFTW_ESTIMATE plans carry no
// alignment assumptions beyond malloc's).
Cvec Fft::forward(const Cvec& in) const {
    Cvec out(N_);
    auto* pi = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
    auto* po = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(static_cast<fftw_plan>(fwd_), pi, po);
    return out;
}

Cvec Fft::inverse(const Cvec& in) const {
    Cvec out(N_);
    auto* pi = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
    auto* po = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(static_cast<fftw_plan>(bwd_), pi, po);
    const double inv = 1.0 / N_;
    for (auto& z : out) z *= inv;
    return out;
}

Cvec spectral_derivative(const Fft& fft, const Grid& g, const Cvec& f, int n) {
    Cvec hat = fft.forward(f);
    const Rvec kk = g.k();
    for (int j = 0; j < g.N; ++j) {
        cplx mult = std::pow(cplx{0, kk[j]}, n);
        if (n % 2 == 1 && j == g.N / 2) mult = 0;  // Nyquist has no odd-power sign
        hat[j] *= mult;
    }
    return fft.inverse(hat);
}

Cvec prefix_integral(const Fft& fft, const Grid& g, const Cvec& f) {
    const int N = g.N;
    Cvec hat = fft.forward(f);
    for (auto& z : hat) z /= static_cast<double>(N);

    const Rvec kk = g.k();
    Cvec ghat(N, cplx{0, 0});
    cplx corr{0, 0};
    for (int j = 1; j < N; ++j) {
        const double kj = (j == N / 2) ? std::numbers::pi * N / g.L : kk[j];
        ghat[j] = hat[j] / cplx{0, kj};
        corr += ghat[j];
    }
    Cvec osc = fft.inverse(ghat);
    Cvec out(N);
    const double d = g.dx();
    for (int j = 0; j < N; ++j)
        out[j] = hat[0] * (j * d) + static_cast<double>(N) * osc[j] - corr;
    return out;
}

void dealias_hat(Cvec& hat) {
    const int N = static_cast<int>(hat.size());
    for (int j = 0; j < N; ++j) {
        const int m = j <= N / 2 ? j : j - N;
        if (std::abs(m) > N / 3) hat[j] = 0;
    }
}

Cvec spectral_shift(const Fft& fft, const Grid& g, const Cvec& f, double shift) {
    Cvec hat = fft.forward(f);
    const Rvec kk = g.k();
    for (int j = 0; j < g.N; ++j) {
        const double kj = (j == g.N / 2) ? 0.0 : kk[j];  // drop the odd Nyquist phase
        hat[j] *= std::exp(cplx{0, -kj * shift});
    }
    Cvec out = fft.inverse(hat);
    return out;
}

ComplexField spectral_resample(const ComplexField& f, int N_new) {
    const int N = f.grid.N;
    Fft fa(N), fb(N_new);
    Cvec hat = fa.forward(f.v);
    Cvec hat2(N_new, cplx{0, 0});
    const int keep = std::min(N, N_new) / 2;
    for (int m = -keep + 1; m < keep; ++m) {
        const int src = m >= 0 ? m : m + N;
        const int dst = m >= 0 ? m : m + N_new;
        hat2[dst] = hat[src] * (static_cast<double>(N_new) / N);
    }
    ComplexField out{make_grid(f.grid.L, N_new, f.grid.dt), fb.inverse(hat2)};
    return out;
}

}  // namespace dnls
