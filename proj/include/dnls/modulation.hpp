#pragma once

#include <optional>
#include <string>

#include "dnls/grid.hpp"
#include "dnls/params.hpp"

namespace dnls {

struct Ball {
    double center = 0;
    double radius = 0;
};

struct ModulationFit {
    double y = 0;        // fitted translation
    double theta = 0;    // fitted phase
    double distance = 0; // inf over (y, theta) of ||u - e^{i theta} phi(. - y)||
    bool restricted = false;
};

// Translation scan by FFT cross-correlation, then golden-section refinement
// of |<u, phi(. - y)>| to 1e-6 in y using the exact band-limited inner
// product; theta = arg of the inner product at the optimum. The optional
// ball restricts all inner products and the distance to |x - center| <= radius.
ModulationFit modulation_distance(const ComplexField& u, const SolitonParams& p,
                                  std::optional<Ball> restricted = {});

// Greedy multi-soliton fit: one restricted fit per component inside windows
// of width 8/h_j around the predicted centers x_j + c_j t, subtracting each
// fitted piece. Returns per-component fits and the residual distance
// ||u - sum_j e^{i theta_j} phi_j(. - y_j)|| on the whole line.
struct MultiModulationFit {
    std::vector<ModulationFit> components;
    double distance = 0;
    std::string warning;  // set when windows overlap and the greedy fit
                          // falls back to joint coordinate descent
};
MultiModulationFit multi_modulation_distance(const ComplexField& u,
                                             const std::vector<SolitonParams>& ps,
                                             double t);

}  // namespace dnls
