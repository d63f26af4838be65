#include "dnls/grid.hpp"

#include <cmath>
#include <numbers>

#include "dnls/fft.hpp"

namespace dnls {

Rvec Grid::x() const {
    Rvec out(N);
    const double d = dx();
    for (int j = 0; j < N; ++j) out[j] = -0.5 * L + j * d;
    return out;
}

Rvec Grid::k() const {
    Rvec out(N);
    const double f = 2.0 * std::numbers::pi / L;
    for (int j = 0; j < N; ++j) {
        const int m = j <= N / 2 ? j : j - N;
        out[j] = f * m;
    }
    return out;
}

static bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Grid make_grid(double L, int N, double dt) {
    if (!(L > 0)) throw std::invalid_argument("grid: L must be positive");
    if (!power_of_two(N) || N < 16)
        throw std::invalid_argument("grid: N must be a power of two >= 16");
    return Grid{L, N, dt};
}

double suggested_box(double h) {
    if (!(h > 0)) throw std::invalid_argument("suggested_box: h must be positive");
    return 140.0 / h;
}

ComplexField make_field(const Grid& g) {
    return ComplexField{g, Cvec(g.N, cplx{0, 0})};
}

double norm_l2(const ComplexField& f) {
    double s = 0;
    for (const auto& z : f.v) s += std::norm(z);
    return std::sqrt(s * f.grid.dx());
}

double norm_sup(const ComplexField& f) {
    double s = 0;
    for (const auto& z : f.v) s = std::max(s, std::abs(z));
    return s;
}

static double deriv_norm_sq(const ComplexField& f, int order) {
    Fft fft(f.grid.N);
    Cvec d = spectral_derivative(fft, f.grid, f.v, order);
    double s = 0;
    for (const auto& z : d) s += std::norm(z);
    return s * f.grid.dx();
}

double norm_h1(const ComplexField& f) {
    const double a = norm_l2(f);
    return std::sqrt(a * a + deriv_norm_sq(f, 1));
}

double norm_h2(const ComplexField& f) {
    const double a = norm_l2(f);
    return std::sqrt(a * a + deriv_norm_sq(f, 1) + deriv_norm_sq(f, 2));
}

cplx inner_l2(const ComplexField& a, const ComplexField& b) {
    cplx s{0, 0};
    for (int j = 0; j < a.grid.N; ++j) s += a.v[j] * std::conj(b.v[j]);
    return s * a.grid.dx();
}

}  // namespace dnls
