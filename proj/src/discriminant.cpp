#include "qgraph/discriminant.hpp"

#include "qgraph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qgraph {

CouplingParams::CouplingParams(Potential potential, double alpha, double beta, IntegrationOptions opts)
    : potential_(std::move(potential)), alpha_(alpha), beta_(std::abs(beta)), opts_(opts)
{
    if (!std::isfinite(alpha))
        throw ValidationError("coupling: alpha must be finite");
    if (!std::isfinite(beta) || beta == 0.0)
        throw ValidationError("coupling: beta must be finite and nonzero");
}

double eta(const CouplingParams& c, double z)
{
    const auto sp = integrate_basis(c.potential(), z, c.integration());
    return c.weight() * (sp.du1_l + sp.u2_l) + c.alpha() * sp.u1_l;
}

double eta_via_krein(const CouplingParams& c, double z, double mu_guard)
{
    const auto s = krein_matrix(c.potential(), z, mu_guard, c.integration());
    return c.alpha() / s.s12 - c.weight() * (s.s11 + s.s22) / s.s12;
}

double eta_on_pole(const CouplingParams& c, const DirichletSpectrum& mu, std::size_t k)
{
    if (k >= mu.size())
        throw DomainError("eta_on_pole: eigenvalue index out of range");
    const auto sp = integrate_basis(c.potential(), mu[k], c.integration());
    return c.weight() * (sp.du1_l + sp.u2_l);
}

std::vector<double> sample_eta(const CouplingParams& c, std::span<const double> zs, const Exec& exec)
{
    std::vector<double> out(zs.size());
    parallel_for(zs.size(), exec, [&](std::size_t i) { out[i] = eta(c, zs[i]); });
    return out;
}

double default_scan_floor(const Potential& p, double alpha)
{
    return std::min(0.0, p.min()) - std::abs(alpha) / p.length() - 1.0;
}

namespace {

// Root of g on [a, b] given the sign of g at a (g has a single sign change).
// Bisection only; the sign at `a` comes from theory, not from evaluation.
double bisect_level(const std::function<double(double)>& disc, double level, double a, double b, bool positive_at_a,
                    double rel_tol)
{
    for (int it = 0; it < 400; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b)
            break;
        if (b - a <= rel_tol * std::max(1.0, std::abs(m)))
            break;
        const bool positive = disc(m) - level > 0.0;
        if (positive == positive_at_a)
            a = m;
        else
            b = m;
    }
    return 0.5 * (a + b);
}

} // namespace

std::vector<BandWindow> locate_windows(const std::function<double(double)>& disc, double threshold,
                                       std::span<const double> anchors, double z_min, double z_max,
                                       const Exec& exec, const WindowOptions& opts)
{
    if (!(z_min < z_max))
        throw DomainError("band_windows: requires z_min < z_max");
    if (anchors.empty() || !(anchors.back() > z_max))
        throw DomainError("band_windows: anchors must extend beyond z_max");

    // Window n lives in [anchor_{n-1}, anchor_n] with anchor_{-1} = -infinity.
    std::vector<int> candidates;
    for (std::size_t n = 0; n < anchors.size(); ++n) {
        const double left = n == 0 ? -std::numeric_limits<double>::infinity() : anchors[n - 1];
        if (anchors[n] >= z_min && left <= z_max)
            candidates.push_back(static_cast<int>(n));
    }

    std::vector<BandWindow> windows(candidates.size());
    parallel_for(candidates.size(), exec, [&](std::size_t i) {
        const int n = candidates[i];
        const bool decreasing = n % 2 == 0;
        const double right = anchors[static_cast<std::size_t>(n)];
        double left = 0.0;
        if (n == 0) {
            // Below mu_0 the discriminant grows without bound: walk down until it
            // clears the threshold.
            left = std::min(z_min, right - 1.0);
            double step = right - left;
            int it = 0;
            while (disc(left) < threshold) {
                if (++it > 64)
                    throw NumericalSearchError("band_windows: lowest window has no lower end", left, right);
                step *= 2.0;
                left = right - step;
            }
        } else {
            left = anchors[static_cast<std::size_t>(n - 1)];
        }

        // Level met first (at the left) and second (at the right).
        const double first = decreasing ? threshold : -threshold;
        const double second = -first;
        const double touch = opts.touch_tol * threshold;

        // An anchor sitting on the level is a touching edge only if the
        // discriminant enters the band on the inside of the window.
        const double probe = 1e-7 * std::max(1.0, right - left);
        auto touches = [&](double anchor, double level, double inward) {
            if (std::abs(disc(anchor) - level) > touch)
                return false;
            return std::abs(disc(anchor + inward)) <= threshold;
        };
        double lo = 0.0, hi = 0.0;
        if (n > 0 && touches(left, first, probe))
            lo = left;
        else
            lo = bisect_level(disc, first, left, right, decreasing, opts.endpoint_tol);
        if (touches(right, second, -probe))
            hi = right;
        else
            hi = bisect_level(disc, second, left, right, decreasing, opts.endpoint_tol);
        if (hi < lo)
            std::swap(lo, hi); // cannot happen for a genuine discriminant
        windows[i] = BandWindow{n, lo, hi, !decreasing, lo < z_min || hi > z_max};
    });

    std::vector<BandWindow> out;
    out.reserve(windows.size());
    for (const auto& w : windows)
        if (w.hi >= z_min && w.lo <= z_max)
            out.push_back(w);
    return out;
}

std::vector<BandWindow> band_windows(const CouplingParams& c, const DirichletSpectrum& mu, double z_min,
                                     double z_max, const Exec& exec, const WindowOptions& opts)
{
    const auto anchors = mu.values();
    return locate_windows([&c](double z) { return eta(c, z); }, c.threshold(), anchors, z_min, z_max, exec, opts);
}

std::vector<BandWindow> band_windows(const CouplingParams& c, double z_min, double z_max, const Exec& exec,
                                     const WindowOptions& opts)
{
    if (!(z_min < z_max))
        throw DomainError("band_windows: requires z_min < z_max");
    const auto mu = dirichlet_eigenvalues_through(c.potential(), z_max, 1e-12, c.integration());
    return band_windows(c, mu, z_min, z_max, exec, opts);
}

double invert_eta(const CouplingParams& c, const BandWindow& w, double y)
{
    const double t = c.threshold();
    if (!(std::abs(y) <= t)) {
        std::ostringstream os;
        os << "invert_eta: level " << y << " outside [-" << t << ", " << t << "]";
        throw RangeError(os.str());
    }
    // Edge values of the window.
    const double at_lo = w.increasing ? -t : t;
    if (y == at_lo)
        return w.lo;
    if (y == -at_lo)
        return w.hi;

    const double residual_tol = 1e-12 * (1.0 + std::abs(y));
    double a = w.lo, b = w.hi;
    // Linear guess across the window, then Newton with a bracket.
    double x = w.lo + (w.hi - w.lo) * (y - at_lo) / (-at_lo - at_lo);
    for (int it = 0; it < 200; ++it) {
        const double f = eta(c, x) - y;
        if (std::abs(f) <= residual_tol)
            return x;
        const bool above = f > 0.0;
        // eta - y is negative at lo for an increasing window.
        if (above == w.increasing)
            b = x;
        else
            a = x;
        const double h = 1e-6 * std::max(1.0, std::abs(x));
        const double slope = (eta(c, x + h) - eta(c, x - h)) / (2.0 * h);
        double next = x - f / slope;
        if (!std::isfinite(next) || next <= a || next >= b)
            next = 0.5 * (a + b);
        if (b - a <= 1e-15 * std::max(1.0, std::abs(x)))
            return next;
        x = next;
    }
    return x;
}

} // namespace qgraph
