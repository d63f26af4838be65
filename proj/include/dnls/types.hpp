#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dnls {

using cplx = std::complex<double>;
using Cvec = std::vector<cplx>;
using Rvec = std::vector<double>;

constexpr cplx I{0.0, 1.0};

// Thrown when a trajectory leaves the trusted regime (sup norm explodes or
// goes non-finite). CLI maps this to exit code 3.
struct BlowUpError : std::runtime_error {
    double t;
    explicit BlowUpError(double t_, const std::string& what)
        : std::runtime_error(what), t(t_) {}
};

// Shift hits the discrete spectrum, or a linear solve is unusable
// (cond > 1e12). CLI maps this to exit code 4.
struct ResonanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dnls
