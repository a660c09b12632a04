#include "qgraph/kp_oracle.hpp"

#include "qgraph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qgraph {

namespace {

using Mat2 = std::array<std::array<double, 2>, 2>;

Mat2 multiply(const Mat2& a, const Mat2& b)
{
    return {{{a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]},
             {a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]}}};
}

// exp of the traceless matrix [[d, b], [c, -d]].
Mat2 traceless_exp(double d, double b, double c)
{
    const double s2 = d * d + b * c;
    double ch = 0.0, sh = 0.0; // cosh(s), sinh(s)/s
    if (std::abs(s2) < 1e-8) {
        ch = 1.0 + s2 / 2.0 + s2 * s2 / 24.0;
        sh = 1.0 + s2 / 6.0 + s2 * s2 / 120.0;
    } else if (s2 > 0.0) {
        const double s = std::sqrt(s2);
        ch = std::cosh(s);
        sh = std::sinh(s) / s;
    } else {
        const double w = std::sqrt(-s2);
        ch = std::cos(w);
        sh = std::sin(w) / w;
    }
    return {{{ch + sh * d, sh * b}, {sh * c, ch - sh * d}}};
}

} // namespace

Monodromy kp_monodromy(const Potential& p, double alpha_eff, double z, const PropagatorOptions& opts)
{
    const double spread = std::max({std::abs(z - p.min()), std::abs(z - p.max()), 1.0});
    const double needed = std::ceil(p.length() * std::sqrt(spread) / opts.max_phase_step);
    const int total = std::max(opts.min_steps, static_cast<int>(std::min(needed, 5.0e7)));

    constexpr double gauss = 0.28867513459481288225; // sqrt(3) / 6
    constexpr double comm = 0.14433756729740644113;  // sqrt(3) / 12
    Mat2 phi{{{1.0, 0.0}, {0.0, 1.0}}};
    for (const auto& seg : p.segments()) {
        const double span = seg.t1 - seg.t0;
        if (seg.slope == 0.0) {
            // Flat piece: one exact step.
            phi = multiply(traceless_exp(0.0, span * (seg.v0 - z), span), phi);
            continue;
        }
        const int n = std::max(1, static_cast<int>(std::ceil(total * span / p.length() - 1e-9)));
        const double h = span / n;
        for (int j = 0; j < n; ++j) {
            const double w1 = seg.v0 + seg.slope * ((j + 0.5 - gauss) * h) - z;
            const double w2 = seg.v0 + seg.slope * ((j + 0.5 + gauss) * h) - z;
            // Omega = h/2 (A1 + A2) + sqrt(3)/12 h^2 [A2, A1],  A = [[0, w], [1, 0]]
            phi = multiply(traceless_exp(comm * h * h * (w2 - w1), 0.5 * h * (w1 + w2), h), phi);
        }
    }
    for (const auto& row : phi)
        for (double v : row)
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "kp_monodromy: non-finite transfer matrix at z = " << z << "; raise z_min";
                throw OverflowError(os.str());
            }

    const Mat2 jump{{{1.0, alpha_eff}, {0.0, 1.0}}};
    return {multiply(jump, phi)};
}

std::vector<BandWindow> kp_spectrum(const Potential& p, double alpha_eff, double z_min, double z_max,
                                    const Exec& exec, const PropagatorOptions& opts)
{
    if (!(z_min < z_max))
        throw DomainError("kp_spectrum: requires z_min < z_max");
    const auto anchors = dirichlet_eigenvalues_through(p, z_max).values();
    auto trace = [&](double z) { return kp_monodromy(p, alpha_eff, z, opts).trace(); };
    return locate_windows(trace, 2.0, anchors, z_min, z_max, exec);
}

} // namespace qgraph
