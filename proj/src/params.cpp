#include "dnls/params.hpp"

#include <cmath>

namespace dnls {

double SolitonParams::s_star() const {
    const double g = gamma();
    if (g > 0) throw std::logic_error("s_star is defined for gamma <= 0");
    return std::sqrt(-g / (1.0 - g));
}

double SolitonParams::h() const {
    const double d = 4.0 * omega - c * c;
    return d > 0 ? std::sqrt(d) : 0.0;
}

bool SolitonParams::endpoint() const {
    if (equation != Equation::DNLS_b || gamma() <= 0) return false;
    return std::abs(c - 2.0 * std::sqrt(omega)) < 1e-14 * std::max(1.0, c);
}

Validity validate_params(const SolitonParams& p) {
    if (!(p.omega > 0)) return {false, "omega must be positive"};
    const double two_rt = 2.0 * std::sqrt(p.omega);
    if (p.equation == Equation::gDNLS_sigma) {
        if (!(p.sigma > 0)) return {false, "sigma must be positive"};
        if (!(p.c * p.c < 4.0 * p.omega))
            return {false, "requires c^2 < 4*omega"};
        return {true, ""};
    }
    const double g = p.gamma();
    if (g > 0) {
        if (!(p.c > -two_rt && p.c <= two_rt))
            return {false, "requires -2*sqrt(omega) < c <= 2*sqrt(omega)"};
        return {true, ""};
    }
    // gamma <= 0: only the cosh branch with c < -2 s_* sqrt(omega) survives
    const double s = p.s_star();
    if (!(p.c > -two_rt && p.c < -s * two_rt))
        return {false,
                "requires -2*sqrt(omega) < c < -2*s_star*sqrt(omega) for gamma <= 0"};
    return {true, ""};
}

std::string equation_name(Equation e) {
    return e == Equation::DNLS_b ? "DNLS_b" : "gDNLS_sigma";
}

Equation equation_from_name(const std::string& s) {
    if (s == "DNLS_b") return Equation::DNLS_b;
    if (s == "gDNLS_sigma") return Equation::gDNLS_sigma;
    throw std::invalid_argument("unknown equation: " + s +
                                " (expected DNLS_b or gDNLS_sigma)");
}

}  // namespace dnls
