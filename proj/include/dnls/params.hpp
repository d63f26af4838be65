#pragma once

#include "dnls/types.hpp"

namespace dnls {

enum class Equation { DNLS_b, gDNLS_sigma };

struct SolitonParams {
    Equation equation = Equation::DNLS_b;
    double b = 0.0;      // quintic coefficient (DNLS_b only)
    double sigma = 1.0;  // nonlinearity power (gDNLS_sigma only)
    double omega = 1.0;
    double c = 0.0;
    double theta0 = 0.0;
    double x0 = 0.0;

    double gamma() const { return 1.0 + 16.0 * b / 3.0; }
    double s_star() const;  // sqrt(-gamma/(1-gamma)), only for gamma <= 0
    double h() const;       // sqrt(4*omega - c^2), 0 at the endpoint
    // exponent in the derivative nonlinearity |u|^{2 sigma_eff} u_x
    double sigma_eff() const {
        return equation == Equation::DNLS_b ? 1.0 : sigma;
    }
    bool endpoint() const;  // DNLS_b, gamma > 0, c = 2 sqrt(omega)
};

struct Validity {
    bool ok = false;
    std::string message;  // violated condition when !ok
};

// DNLS_b, gamma > 0 : -2 sqrt(omega) < c <= 2 sqrt(omega)
// DNLS_b, gamma <= 0: -2 sqrt(omega) < c < -2 s_* sqrt(omega)
// gDNLS_sigma       : c^2 < 4 omega, sigma > 0
Validity validate_params(const SolitonParams& p);

std::string equation_name(Equation e);
Equation equation_from_name(const std::string& s);

}  // namespace dnls
