#pragma once

#include "qgraph/config.hpp"

#include <string>
#include <vector>

namespace qgraph {

struct PropertyCheck {
    std::string name;
    bool passed = false;
    double defect = 0.0;    // measured worst case
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<PropertyCheck> checks;
    bool passed() const;
};

/// Invariant suite for one configuration: Wronskian, sign alternation,
/// Chambers momentum independence, Kronig-Penney identity, torus
/// containment, flux periodicity.
ValidationReport validate_config(const RunConfig& rc, const Exec& exec = {});

PropertyCheck check_wronskian(const CouplingParams& c, double z_lo, double z_hi, int samples = 25);
PropertyCheck check_sign_alternation(const CouplingParams& c, int k_max = 10);
PropertyCheck check_chambers(const RationalFlux& f, double beta, int k_grid = 10, int energies = 5);
PropertyCheck check_kp_identity(const CouplingParams& c, double z_lo, double z_hi, int samples = 100,
                                const Exec& exec = {});
PropertyCheck check_torus_containment(const RationalFlux& f, double beta, int max_side = 24);
PropertyCheck check_flux_periodicity(const CouplingParams& c, const ResolvedFlux& f, double z_min, double z_max,
                                     const Exec& exec = {});

} // namespace qgraph
