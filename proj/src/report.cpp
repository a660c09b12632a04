#include "qgraph/report.hpp"

#include <charconv>
#include <sstream>

namespace qgraph {

std::string format_double(double x)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

namespace {

nlohmann::ordered_json interval_json(const SpectralInterval& i)
{
    return {{"z_lo", i.lo}, {"z_hi", i.hi}, {"window", i.window}, {"band", i.band}, {"truncated", i.truncated}};
}

nlohmann::ordered_json bands_json(const std::vector<Band>& bands)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& b : bands)
        arr.push_back(nlohmann::ordered_json::array({b.lo, b.hi}));
    return arr;
}

} // namespace

nlohmann::ordered_json spectrum_json(const SpectralSet& s, const ReportOptions& opts)
{
    const auto& p = s.parameters;
    nlohmann::ordered_json out;
    out["parameters"] = {{"theta", p.theta_input},
                         {"flux", p.flux.str()},
                         {"alpha", p.alpha},
                         {"beta", p.beta},
                         {"l", p.length},
                         {"potential", p.potential},
                         {"z_min", s.z_min},
                         {"z_max", s.z_max}};

    auto points = nlohmann::ordered_json::array();
    for (const auto& e : s.point_spectrum)
        points.push_back({{"k", e.k}, {"mu", e.mu}, {"eta", e.eta}, {"classification", to_string(e.classification)}});
    out["point_spectrum"] = std::move(points);

    auto cont = nlohmann::ordered_json::array();
    for (const auto& i : s.continuous)
        cont.push_back(interval_json(i));
    out["continuous"] = std::move(cont);

    auto gaps = nlohmann::ordered_json::array();
    for (const auto& g : gap_report(s).gaps)
        gaps.push_back({{"z_lo", g.lo}, {"z_hi", g.hi}, {"contains", g.contains}, {"truncated", g.truncated}});
    out["gaps"] = std::move(gaps);

    out["harper_bands"] = bands_json(s.harper.bands);

    nlohmann::ordered_json meta;
    meta["convergent_used"] = p.approximated ? nlohmann::ordered_json(p.flux.str()) : nlohmann::ordered_json(nullptr);
    meta["scan_floor_heuristic"] = {{"value", s.scan_floor.value},
                                    {"used_as_z_min", s.scan_floor.used_as_z_min},
                                    {"lowest_window_below_floor", s.scan_floor.lowest_window_below}};
    meta["spectrum_bottom"] = s.spectrum_bottom ? nlohmann::ordered_json(*s.spectrum_bottom)
                                                : nlohmann::ordered_json(nullptr);
    if (opts.stamp)
        meta["stamp"] = *opts.stamp;
    out["metadata"] = std::move(meta);
    return out;
}

std::string spectrum_csv(const SpectralSet& s)
{
    std::ostringstream os;
    os << "window,band,z_lo,z_hi,truncated\n";
    for (const auto& i : s.continuous)
        os << i.window << ',' << i.band << ',' << format_double(i.lo) << ',' << format_double(i.hi) << ','
           << (i.truncated ? 1 : 0) << '\n';
    return os.str();
}

nlohmann::ordered_json butterfly_json(const ButterflyTable& t, const ReportOptions& opts)
{
    nlohmann::ordered_json out;
    out["z_min"] = t.z_min;
    out["z_max"] = t.z_max;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
        nlohmann::ordered_json row;
        row["theta_num"] = r.flux.p();
        row["theta_den"] = r.flux.q();
        auto iv = nlohmann::ordered_json::array();
        for (const auto& i : r.intervals)
            iv.push_back(interval_json(i));
        row["continuous"] = std::move(iv);
        if (!r.error.empty())
            row["error"] = r.error;
        rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
    if (opts.stamp)
        out["stamp"] = *opts.stamp;
    return out;
}

std::string butterfly_csv(const ButterflyTable& t)
{
    std::ostringstream os;
    os << "theta_num,theta_den,band_index,z_lo,z_hi,truncated\n";
    for (const auto& r : t.rows) {
        int index = 0;
        for (const auto& i : r.intervals)
            os << r.flux.p() << ',' << r.flux.q() << ',' << index++ << ',' << format_double(i.lo) << ','
               << format_double(i.hi) << ',' << (i.truncated ? 1 : 0) << '\n';
    }
    return os.str();
}

nlohmann::ordered_json dirichlet_json(const DirichletSpectrum& mu, double length)
{
    auto arr = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < mu.size(); ++k)
        arr.push_back({{"k", k}, {"mu", mu[k]}, {"tolerance", mu.eigenvalues[k].tolerance}});
    return {{"l", length}, {"dirichlet", std::move(arr)}};
}

std::string dirichlet_csv(const DirichletSpectrum& mu)
{
    std::ostringstream os;
    os << "k,mu\n";
    for (std::size_t k = 0; k < mu.size(); ++k)
        os << k << ',' << format_double(mu[k]) << '\n';
    return os.str();
}

nlohmann::ordered_json harper_json(const HarperBands& h)
{
    return {{"flux", h.flux.str()},
            {"beta", h.beta},
            {"norm_bound", h.norm_bound()},
            {"total_measure", h.total_measure()},
            {"bands", bands_json(h.bands)}};
}

std::string harper_csv(const HarperBands& h)
{
    std::ostringstream os;
    os << "band_index,e_lo,e_hi\n";
    for (std::size_t j = 0; j < h.bands.size(); ++j)
        os << j << ',' << format_double(h.bands[j].lo) << ',' << format_double(h.bands[j].hi) << '\n';
    return os.str();
}

} // namespace qgraph
