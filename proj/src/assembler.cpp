#include "qgraph/assembler.hpp"

#include "qgraph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace qgraph {

std::string to_string(Classification c)
{
    switch (c) {
    case Classification::isolated: return "Isolated";
    case Classification::embedded: return "Embedded";
    case Classification::band_edge: return "BandEdge";
    }
    return "unknown";
}

std::vector<Band> SpectralSet::merged() const
{
    std::vector<Band> runs;
    for (const auto& piece : continuous) {
        if (!runs.empty() && piece.lo <= runs.back().hi)
            runs.back().hi = std::max(runs.back().hi, piece.hi);
        else
            runs.push_back({piece.lo, piece.hi});
    }
    return runs;
}

double SpectralSet::measure() const
{
    double m = 0.0;
    for (const auto& r : merged())
        m += r.hi - r.lo;
    return m;
}

EdgeAnalysis analyze_edges(const CouplingParams& c, std::optional<double> z_min, double z_max, const Exec& exec)
{
    const double floor = default_scan_floor(c.potential(), c.alpha());
    const double lo = z_min.value_or(floor);
    if (!std::isfinite(lo) || !std::isfinite(z_max) || !(lo < z_max))
        throw DomainError("graph_spectrum: scan range requires finite z_min < z_max");

    EdgeAnalysis out;
    out.z_min = lo;
    out.z_max = z_max;
    out.dirichlet = dirichlet_eigenvalues_through(c.potential(), z_max, 1e-12, c.integration());
    out.eta_at_mu.resize(out.dirichlet.size());
    parallel_for(out.dirichlet.size(), exec,
                 [&](std::size_t k) { out.eta_at_mu[k] = eta_on_pole(c, out.dirichlet, k); });
    out.windows = band_windows(c, out.dirichlet, lo, z_max, exec);

    bool below = false;
    for (const auto& w : out.windows)
        if (w.index == 0 && w.lo < floor)
            below = true;
    out.scan_floor = {floor, !z_min.has_value(), below};
    return out;
}

Classification classify_eigenvalue(double eta_mu, const HarperBands& bands, double tol)
{
    for (const auto& b : bands.bands) {
        if (std::abs(eta_mu - b.lo) <= tol || std::abs(eta_mu - b.hi) <= tol)
            return Classification::band_edge;
    }
    for (const auto& b : bands.bands) {
        if (eta_mu > b.lo && eta_mu < b.hi)
            return Classification::embedded;
    }
    return Classification::isolated;
}

Classification classify_eigenvalue(const CouplingParams& c, const RationalFlux& f, std::size_t k, double tol)
{
    const auto mu = dirichlet_eigenvalues(c.potential(), static_cast<int>(k), 1e-12, c.integration());
    return classify_eigenvalue(eta_on_pole(c, mu, k), harper_spectrum(f, c.beta()), tol);
}

SpectralSet assemble(const CouplingParams& c, const EdgeAnalysis& edges, const ResolvedFlux& flux, const Exec& exec)
{
    SpectralSet s;
    s.z_min = edges.z_min;
    s.z_max = edges.z_max;
    s.scan_floor = edges.scan_floor;
    s.harper = harper_spectrum(flux.flux, c.beta());
    s.parameters = {flux.input,  flux.flux,  flux.approximated,          c.alpha(),
                    c.beta(),    c.potential().length(), c.potential().descriptor()};

    for (std::size_t k = 0; k < edges.dirichlet.size(); ++k) {
        const double mu = edges.dirichlet[k];
        if (mu < edges.z_min || mu > edges.z_max)
            continue;
        s.point_spectrum.push_back(
            {static_cast<int>(k), mu, edges.eta_at_mu[k], classify_eigenvalue(edges.eta_at_mu[k], s.harper)});
    }

    const auto& bands = s.harper.bands;
    std::vector<std::vector<SpectralInterval>> per_window(edges.windows.size());
    std::vector<std::optional<double>> bottoms(edges.windows.size());
    parallel_for(edges.windows.size(), exec, [&](std::size_t wi) {
        const auto& w = edges.windows[wi];
        std::map<double, double> cache; // energy -> z; touching bands share an edge
        auto preimage = [&](double e) {
            auto it = cache.find(e);
            if (it != cache.end())
                return it->second;
            const double z = invert_eta(c, w, e);
            cache.emplace(e, z);
            return z;
        };
        for (std::size_t j = 0; j < bands.size(); ++j) {
            const double za = preimage(bands[j].lo);
            const double zb = preimage(bands[j].hi);
            const double lo = std::min(za, zb), hi = std::max(za, zb);
            if (w.index == 0 && (!bottoms[wi] || lo < *bottoms[wi]))
                bottoms[wi] = lo;
            if (hi < edges.z_min || lo > edges.z_max)
                continue;
            const bool clipped = lo < edges.z_min || hi > edges.z_max;
            per_window[wi].push_back({std::max(lo, edges.z_min), std::min(hi, edges.z_max), w.index,
                                      static_cast<int>(j), clipped});
        }
    });
    for (std::size_t wi = 0; wi < per_window.size(); ++wi) {
        s.continuous.insert(s.continuous.end(), per_window[wi].begin(), per_window[wi].end());
        if (bottoms[wi])
            s.spectrum_bottom = bottoms[wi];
    }
    std::sort(s.continuous.begin(), s.continuous.end(), [](const SpectralInterval& a, const SpectralInterval& b) {
        return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
    });
    return s;
}

SpectralSet graph_spectrum(const CouplingParams& c, const ResolvedFlux& flux, std::optional<double> z_min,
                           double z_max, const Exec& exec)
{
    return assemble(c, analyze_edges(c, z_min, z_max, exec), flux, exec);
}

SpectralSet graph_spectrum(const CouplingParams& c, double theta, long long q_max, std::optional<double> z_min,
                           double z_max, const Exec& exec)
{
    return graph_spectrum(c, resolve_flux(theta, q_max), z_min, z_max, exec);
}

GapReport gap_report(const SpectralSet& s)
{
    GapReport report;
    const auto runs = s.merged();
    // Below inf Sigma there is no gap; when the bottom is not in range, the
    // part of the range below the first run may continue a gap.
    double cursor = s.z_min;
    bool left_open = true;
    if (s.spectrum_bottom && *s.spectrum_bottom >= s.z_min) {
        cursor = *s.spectrum_bottom;
        left_open = false;
    }
    auto add_gap = [&](double lo, double hi, bool truncated) {
        Gap g{lo, hi, {}, truncated};
        for (const auto& e : s.point_spectrum)
            if (e.mu > lo && e.mu < hi)
                g.contains.push_back(e.k);
        report.gaps.push_back(std::move(g));
    };
    for (const auto& r : runs) {
        if (r.lo > cursor)
            add_gap(cursor, r.lo, left_open && cursor == s.z_min);
        cursor = std::max(cursor, r.hi);
        left_open = false;
    }
    if (cursor < s.z_max)
        add_gap(cursor, s.z_max, true);
    return report;
}

ButterflyTable butterfly_sweep(const CouplingParams& c, long long q_max, std::optional<double> z_min, double z_max,
                               const Exec& exec)
{
    const auto fluxes = farey_fluxes(q_max);
    const auto edges = analyze_edges(c, z_min, z_max, exec);

    ButterflyTable table;
    table.z_min = edges.z_min;
    table.z_max = edges.z_max;
    table.rows.resize(fluxes.size(), ButterflyRow{RationalFlux{0, 1}, {}, {}});
    parallel_for(fluxes.size(), exec, [&](std::size_t i) {
        auto& row = table.rows[i];
        row.flux = fluxes[i];
        try {
            const ResolvedFlux rf{fluxes[i], fluxes[i].str(), false};
            row.intervals = assemble(c, edges, rf, Exec::serial()).continuous;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    });
    return table;
}

} // namespace qgraph
