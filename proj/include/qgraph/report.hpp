#pragma once

#include "qgraph/assembler.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace qgraph {

struct ReportOptions {
    std::optional<std::string> stamp; // written to metadata only when set
};

nlohmann::ordered_json spectrum_json(const SpectralSet& s, const ReportOptions& opts = {});
/// window, band, z_lo, z_hi, truncated
std::string spectrum_csv(const SpectralSet& s);

nlohmann::ordered_json butterfly_json(const ButterflyTable& t, const ReportOptions& opts = {});
/// theta_num,theta_den,band_index,z_lo,z_hi,truncated; LF line endings.
std::string butterfly_csv(const ButterflyTable& t);

nlohmann::ordered_json dirichlet_json(const DirichletSpectrum& mu, double length);
std::string dirichlet_csv(const DirichletSpectrum& mu);

nlohmann::ordered_json harper_json(const HarperBands& h);
std::string harper_csv(const HarperBands& h);

/// Shortest text that round-trips the double.
std::string format_double(double x);

} // namespace qgraph
