#pragma once

#include "qgraph/edge_solver.hpp"
#include "qgraph/parallel.hpp"
#include "qgraph/potential.hpp"

#include <functional>
#include <span>
#include <vector>

namespace qgraph {

/// Vertex coupling alpha, anisotropy beta and the edge potential.
/// beta enters only through beta^2 and is stored as |beta| > 0.
class CouplingParams {
public:
    CouplingParams(Potential potential, double alpha, double beta, IntegrationOptions opts = {});

    const Potential& potential() const { return potential_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    const IntegrationOptions& integration() const { return opts_; }

    /// 1 + beta^2
    double weight() const { return 1.0 + beta_ * beta_; }
    /// 2 (1 + beta^2), the half-width of the band strip of eta.
    double threshold() const { return 2.0 * weight(); }

private:
    Potential potential_;
    double alpha_;
    double beta_;
    IntegrationOptions opts_;
};

/// eta(z) = (1 + beta^2) (u1'(l;z) + u2(l;z)) + alpha u1(l;z).
/// Entire in z; never evaluated through s(z).
double eta(const CouplingParams& c, double z);

/// eta through the Krein matrix, alpha/s12 - (1+beta^2)(s11+s22)/s12.
/// Only for cross-checks away from the Dirichlet eigenvalues.
double eta_via_krein(const CouplingParams& c, double z, double mu_guard = 1e-8);

/// eta at mu_k, (1 + beta^2)(u1' + u2); alpha drops out as u1(l; mu_k) = 0.
double eta_on_pole(const CouplingParams& c, const DirichletSpectrum& mu, std::size_t k);

/// eta on a batch of points (serial reference or OpenMP).
std::vector<double> sample_eta(const CouplingParams& c, std::span<const double> zs, const Exec& exec = {});

/// Maximal interval J_n on which |eta| <= 2(1 + beta^2). lo/hi always hold
/// the full window, also when it sticks out of the scan range (truncated).
struct BandWindow {
    int index = 0;        // n: the window lies between mu_{n-1} and mu_n
    double lo = 0.0;
    double hi = 0.0;
    bool increasing = false;
    bool truncated = false;
};

struct WindowOptions {
    double endpoint_tol = 1e-13; // relative bisection tolerance on endpoints
    double touch_tol = 1e-9;     // relative: |disc(mu_k)| within this of the threshold counts as touching
};

/// Window discovery for any Floquet discriminant whose level +-threshold
/// sections are separated by the anchors (the Dirichlet eigenvalues, with
/// disc(anchor_k) <= -threshold for even k and >= threshold for odd k).
/// `anchors` must run through the first anchor above z_max.
std::vector<BandWindow> locate_windows(const std::function<double(double)>& disc, double threshold,
                                       std::span<const double> anchors, double z_min, double z_max,
                                       const Exec& exec = {}, const WindowOptions& opts = {});

/// Windows of eta intersecting [z_min, z_max], in increasing order.
std::vector<BandWindow> band_windows(const CouplingParams& c, double z_min, double z_max,
                                     const Exec& exec = {}, const WindowOptions& opts = {});

/// Same, reusing an already computed Dirichlet spectrum (through z_max).
std::vector<BandWindow> band_windows(const CouplingParams& c, const DirichletSpectrum& mu, double z_min,
                                     double z_max, const Exec& exec = {}, const WindowOptions& opts = {});

/// Unique z in the window with eta(z) = y, |y| <= 2(1 + beta^2).
double invert_eta(const CouplingParams& c, const BandWindow& w, double y);

/// min(0, inf V) - |alpha| / l - 1. A heuristic lower scan bound only.
double default_scan_floor(const Potential& p, double alpha);

} // namespace qgraph
