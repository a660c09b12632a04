#pragma once

#include "qgraph/discriminant.hpp"
#include "qgraph/harper.hpp"
#include "qgraph/potential.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace qgraph {

enum class OutputFormat { json, csv };

/// One run of the command-line tool, as read from a config document.
struct RunConfig {
    double length = 0.0;
    Potential potential = Potential::zero(1.0);
    double alpha = 0.0;
    double beta = 1.0;
    std::string theta = "0";      // "p/q", an integer, or a decimal
    bool theta_from_field = false; // theta was computed from `field`
    long long q_max = 50;
    std::optional<double> z_min;   // default: scan-floor heuristic
    std::optional<double> z_max;   // default: see default_z_max
    int k_max = 2;
    OutputFormat format = OutputFormat::json;
    std::string out;               // empty: stdout

    CouplingParams coupling() const { return {potential, alpha, beta}; }
    ResolvedFlux flux() const { return resolve_flux(theta, q_max); }
    /// z_max, or ((k_max + 1.5) pi / l)^2 + max V when absent.
    double upper() const;
};

/// Keys: l, potential, alpha, beta, theta | field, q_max, z_min, z_max,
/// k_max, format, out. Throws ParseError / ValidationError.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

OutputFormat parse_format(const std::string& text);

} // namespace qgraph
