#pragma once

#include <Eigen/Dense>

#include "dnls/grid.hpp"
#include "dnls/params.hpp"

namespace dnls {

// Two-component field (v+, v-) on a grid, complex entries so it can hold
// eigenfunctions and resolvent data; physically real pairs just carry ~0
// imaginary parts. The complex scalar it represents is v+ + i v-.
struct PairField {
    Grid grid;
    Cvec p, m;
};

PairField make_pair(const Grid& g);
double pair_norm_l2(const PairField& f);
ComplexField pair_to_complex(const PairField& f);   // v+ + i v-, drops residual imag
PairField complex_to_pair(const ComplexField& f);   // (Re f, Im f)

enum class OperatorForm { L_plain, L_tilde, H_form };

struct BlockOperator {
    OperatorForm form = OperatorForm::L_plain;
    Grid grid;
    SolitonParams params;
    Eigen::MatrixXd A;    // 2N x 2N acting on stacked (v+, v-)
    // Set only by conjugate_prime: the complex similarity i P A P^{-1}.
    Eigen::MatrixXcd C;
    bool complex_form = false;
};

// L_plain: linearization around the soliton in the co-moving frame, real
//          block form, advection symmetrized as (M D + D M - diag(M'))/2 so
//          that H below is symmetric to round-off.
// L_tilde: same operator conjugated by e^{i c x / 2}; the potentials are the
//          half-phase-stripped profile's, all decaying. The caller should
//          use a box with c L / 2 = 0 mod 2 pi or the wrap pollutes the
//          conjugacy identity at k_max^2 * (edge amplitude).
// H_form:  H = -i L, symmetric; blocks [[L21, L22], [-L11, -L12]].
BlockOperator assemble_L(const SolitonParams& p, const Grid& g, OperatorForm form);

PairField apply(const BlockOperator& op, const PairField& v);

struct SpectrumReport {
    SolitonParams params;
    Grid grid;
    Cvec eigenvalues;        // retained (localized, off the essential band)
    cplx lambda{0, 0};       // rho + i theta, maximal real part retained
    bool a1_holds = false;   // rho > 1e-6 * scale
    std::string note;        // "(A1) fails at this parameter point" when not
    PairField Z;             // eigenfunction at lambda, L2 norm 1, largest
                             // sample rotated real positive
    PairField Zgrow;         // eigenfunction at -lambda (grows under dY/dt = -LY)
    PairField Y1, Y2;        // Re Z, Im Z
    double alpha_fit = 0;    // tail decay rate of Z
    double essential_band = 0;  // h^2 / 4
    double scale = 0;        // max |eigenvalue|
};

// Dense eigensolve + filtering. Retained = tail mass fraction in |x| > L/4
// below 1e-4, not within 1e-3 of the essential band i[h^2/4, inf) in both
// parts, and either |Re| > 1e-8 * scale or inside the spectral gap (the
// near-kernel symmetry modes).
SpectrumReport eigen_spectrum(const BlockOperator& op);

// Y(t) = e^{-rho t} (cos(theta t) Y1 + sin(theta t) Y2); needs a1_holds.
PairField Y_of_t(const SpectrumReport& rep, double t);

// (A - mu I) X = rhs over the complexified block matrix. Rejects mu within
// 1e-6 of a retained eigenvalue or of the essential band when a report is
// supplied; always rejects cond > 1e12.
PairField resolvent_solve(const BlockOperator& op, cplx mu, const PairField& rhs,
                          const SpectrumReport* rep = nullptr);

// Least-squares slope of log(samples) over |x| in [L/8, L/4], both sides
// pooled. Returns the decay rate alpha (positive for decay).
double decay_fit(const Grid& g, const Rvec& samples, double* C_out = nullptr);
double decay_fit(const ComplexField& f, double* C_out = nullptr);
// pointwise |v+| + |v-| + |v+'| + |v-'|
double decay_fit(const PairField& f, double* C_out = nullptr);

}  // namespace dnls
