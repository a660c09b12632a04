#pragma once

#include "qgraph/discriminant.hpp"
#include "qgraph/edge_solver.hpp"
#include "qgraph/harper.hpp"
#include "qgraph/parallel.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qgraph {

enum class Classification { isolated, embedded, band_edge };

std::string to_string(Classification c);

struct PointEigenvalue {
    int k;
    double mu;
    double eta; // eta(mu_k)
    Classification classification;
};

/// Preimage of one Harper band inside one band window.
struct SpectralInterval {
    double lo;
    double hi;
    int window;
    int band;
    bool truncated; // clipped by the scan range
};

struct ScanFloor {
    double value;                // min(0, inf V) - |alpha|/l - 1
    bool used_as_z_min;          // the caller did not supply z_min
    bool lowest_window_below;    // the lowest band window reaches below the floor
};

struct SpectrumParameters {
    std::string theta_input;
    RationalFlux flux{0, 1};
    bool approximated = false; // flux is a continued-fraction convergent of theta_input
    double alpha = 0.0;
    double beta = 1.0;
    double length = 0.0;
    std::string potential;
};

/// Assembled spectrum Sigma_0 cup Sigma on the scan range.
struct SpectralSet {
    std::vector<PointEigenvalue> point_spectrum;
    std::vector<SpectralInterval> continuous; // sorted by (lo, hi); touching pieces kept apart
    double z_min = 0.0;
    double z_max = 0.0;
    std::optional<double> spectrum_bottom; // inf Sigma, when the lowest window is in range
    SpectrumParameters parameters;
    ScanFloor scan_floor{};
    HarperBands harper{RationalFlux{0, 1}, 1.0, {}};

    /// Union of the continuous pieces as maximal closed runs.
    std::vector<Band> merged() const;
    /// Lebesgue measure of the continuous part inside the scan range.
    double measure() const;
};

struct Gap {
    double lo;
    double hi;
    std::vector<int> contains; // indices k of the mu_k inside the gap
    bool truncated;            // the gap may continue past the scan range
};

struct GapReport {
    std::vector<Gap> gaps;
};

/// Theta-independent part of the computation: Dirichlet eigenvalues through
/// z_max, eta at each of them, and the band windows meeting the range.
struct EdgeAnalysis {
    DirichletSpectrum dirichlet;
    std::vector<double> eta_at_mu;
    std::vector<BandWindow> windows;
    double z_min = 0.0;
    double z_max = 0.0;
    ScanFloor scan_floor{};
};

EdgeAnalysis analyze_edges(const CouplingParams& c, std::optional<double> z_min, double z_max,
                           const Exec& exec = {});

/// Isolated when eta(mu_k) misses every band by more than tol, BandEdge when
/// within tol of an edge, Embedded when strictly inside a band.
Classification classify_eigenvalue(double eta_mu, const HarperBands& bands, double tol = 1e-9);

/// Classification of mu_k for the given flux (recomputes what it needs).
Classification classify_eigenvalue(const CouplingParams& c, const RationalFlux& f, std::size_t k,
                                   double tol = 1e-9);

SpectralSet assemble(const CouplingParams& c, const EdgeAnalysis& edges, const ResolvedFlux& flux,
                     const Exec& exec = {});

/// Full pipeline. z_min defaults to the scan-floor heuristic.
SpectralSet graph_spectrum(const CouplingParams& c, const ResolvedFlux& flux, std::optional<double> z_min,
                           double z_max, const Exec& exec = {});
SpectralSet graph_spectrum(const CouplingParams& c, double theta, long long q_max, std::optional<double> z_min,
                           double z_max, const Exec& exec = {});

GapReport gap_report(const SpectralSet& s);

struct ButterflyRow {
    RationalFlux flux;
    std::vector<SpectralInterval> intervals;
    std::string error; // nonempty when this theta failed
};

struct ButterflyTable {
    std::vector<ButterflyRow> rows; // ordered by (q, p)
    double z_min = 0.0;
    double z_max = 0.0;
};

/// Continuous spectrum for every reduced p/q in [0, 1] with q <= q_max.
/// Rows are independent; the OpenMP path parallelises across them.
ButterflyTable butterfly_sweep(const CouplingParams& c, long long q_max, std::optional<double> z_min, double z_max,
                               const Exec& exec = {});

} // namespace qgraph
