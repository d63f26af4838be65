#include "dnls/helmholtz.hpp"

#include <cmath>
#include <stdexcept>

#include "dnls/fft.hpp"

namespace dnls {

KernelSpec make_kernel_spec(cplx mu) {
    if (mu.imag() == 0.0 && mu.real() >= 0.0)
        throw std::invalid_argument(
            "helmholtz kernel: mu on [0, inf) has no decaying branch");
    double theta = std::arg(mu);           // (-pi, pi]
    if (theta <= 0.0) theta += 2 * M_PI;   // -> (0, 2 pi]
    KernelSpec spec;
    spec.mu = mu;
    const double r = std::sqrt(std::abs(mu));
    spec.sqrt_mu = r * std::exp(cplx{0, 0.5 * theta});
    const double s = std::sin(0.5 * theta);
    spec.tau = std::abs(mu) * s * s;
    spec.C_bound = s;
    return spec;
}

cplx g_mu(const KernelSpec& spec, double x) {
    return I / (2.0 * spec.sqrt_mu) * std::exp(I * spec.sqrt_mu * std::abs(x));
}

ComplexField g_mu(const KernelSpec& spec, const Grid& g) {
    ComplexField out = make_field(g);
    const Rvec x = g.x();
    for (int j = 0; j < g.N; ++j) out.v[j] = g_mu(spec, x[j]);
    return out;
}

ComplexField convolve_kernel(const KernelSpec& spec, const ComplexField& f,
                             std::string* warning) {
    const int N = f.grid.N;
    if (warning) {
        *warning = "";
        const Rvec x = f.grid.x();
        double sup = 0, tail = 0;
        for (int j = 0; j < N; ++j) {
            const double a = std::abs(f.v[j]);
            sup = std::max(sup, a);
            if (std::abs(x[j]) >= 0.25 * f.grid.L) tail = std::max(tail, a);
        }
        if (tail > 1e-8 * sup)
            *warning = "source is poorly localized; the periodized kernel "
                       "truncates its tail";
    }
    Fft fft(N);
    const Rvec k = f.grid.k();
    Cvec hat = fft.forward(f.v);
    for (int j = 0; j < N; ++j) {
        const cplx denom = k[j] * k[j] - spec.mu;
        if (std::abs(denom) < 1e-8)
            throw ResonanceError(
                "helmholtz solve: mu collides with a grid value of k^2");
        hat[j] /= denom;
    }
    ComplexField out = make_field(f.grid);
    out.v = fft.inverse(hat);
    return out;
}

BlockOperator conjugate_prime(const BlockOperator& op) {
    if (op.complex_form)
        throw std::invalid_argument("conjugate_prime expects the real block form");
    const int N = op.grid.N;
    const auto A11 = op.A.topLeftCorner(N, N);
    const auto A12 = op.A.topRightCorner(N, N);
    const auto A21 = op.A.bottomLeftCorner(N, N);
    const auto A22 = op.A.bottomRightCorner(N, N);

    BlockOperator out;
    out.form = op.form;
    out.grid = op.grid;
    out.params = op.params;
    out.complex_form = true;
    out.C.resize(2 * N, 2 * N);
    // i P A P^{-1} with P = [[1, i], [1, -i]] works out blockwise, no matmul
    auto combine = [](const Eigen::MatrixXd& re, const Eigen::MatrixXd& im) {
        return (0.5 * (re.cast<cplx>() + cplx{0, 1} * im.cast<cplx>())).eval();
    };
    out.C.topLeftCorner(N, N) = combine(A12 - A21, A11 + A22);
    out.C.topRightCorner(N, N) = combine(-A12 - A21, A11 - A22);
    out.C.bottomLeftCorner(N, N) = combine(A12 + A21, A11 - A22);
    out.C.bottomRightCorner(N, N) = combine(-A12 + A21, A11 + A22);
    return out;
}

}  // namespace dnls
