#pragma once

#include "qgraph/discriminant.hpp"
#include "qgraph/potential.hpp"

#include <array>
#include <vector>

namespace qgraph {

// Kronig-Penney cross-check. The line operator -d^2/dt^2 + W + alpha_eff
// sum_k delta(t - k l), W the l-periodic extension of V, has monodromy
//   M(z) = J * Phi(l),  J = [[1, alpha_eff], [0, 1]],
// with Phi the fundamental matrix in the (derivative, value) ordering.
// Phi is built from exact 2x2 exponential propagators (fourth-order Magnus
// on sloped pieces, exact on flat ones), independently of the RK4 edge solver.

struct Monodromy {
    // m[row][col]; row 0 holds derivatives, row 1 values.
    std::array<std::array<double, 2>, 2> m;

    double trace() const { return m[0][0] + m[1][1]; }
    double determinant() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

struct PropagatorOptions {
    int min_steps = 512;          // across [0, l] on sloped pieces
    double max_phase_step = 2e-3; // radians of oscillation per step
};

Monodromy kp_monodromy(const Potential& p, double alpha_eff, double z, const PropagatorOptions& opts = {});

/// Closed intervals where |tr M(z)| <= 2 inside [z_min, z_max].
std::vector<BandWindow> kp_spectrum(const Potential& p, double alpha_eff, double z_min, double z_max,
                                    const Exec& exec = {}, const PropagatorOptions& opts = {});

} // namespace qgraph
