#include "qgraph/validation.hpp"

#include "qgraph/assembler.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/kp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qgraph {

bool ValidationReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed; });
}

namespace {

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        z[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return z;
}

PropertyCheck finish(std::string name, double defect, double tol, std::string detail = {})
{
    return {std::move(name), defect <= tol, defect, tol, std::move(detail)};
}

} // namespace

PropertyCheck check_wronskian(const CouplingParams& c, double z_lo, double z_hi, int samples)
{
    double worst = 0.0;
    for (double z : linspace(z_lo, z_hi, samples))
        worst = std::max(worst, std::abs(integrate_basis(c.potential(), z, c.integration()).wronskian_defect));
    return finish("wronskian", worst, 1e-8);
}

PropertyCheck check_sign_alternation(const CouplingParams& c, int k_max)
{
    const auto mu = dirichlet_eigenvalues(c.potential(), k_max, 1e-12, c.integration());
    const double t = c.threshold();
    // Defect: how far (-1)^k eta(mu_k) rises above -T.
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < mu.size(); ++k) {
        const double sign = k % 2 == 0 ? 1.0 : -1.0;
        worst = std::max(worst, (sign * eta_on_pole(c, mu, k) + t) / t);
    }
    std::ostringstream os;
    os << "k <= " << k_max << ", relative margin";
    return {"sign_alternation", worst <= 1e-9, std::max(worst, 0.0), 1e-9, os.str()};
}

PropertyCheck check_chambers(const RationalFlux& f, double beta, int k_grid, int energies)
{
    try {
        const auto poly = chambers_polynomial(f, beta);
        const double r = 2.0 * (1.0 + beta * beta);
        const auto es = linspace(-r, r, energies);
        return finish("chambers", chambers_defect(poly, k_grid, es), 1e-9, "relative to max(2 + 2 beta^{2q}, |P|)");
    } catch (const ConsistencyError& e) {
        return {"chambers", false, std::numeric_limits<double>::infinity(), 1e-9, e.what()};
    }
}

PropertyCheck check_kp_identity(const CouplingParams& c, double z_lo, double z_hi, int samples, const Exec& exec)
{
    const auto zs = linspace(z_lo, z_hi, samples);
    const double alpha_eff = c.alpha() / c.weight();
    std::vector<double> diff(zs.size());
    parallel_for(zs.size(), exec, [&](std::size_t i) {
        diff[i] = std::abs(c.weight() * kp_monodromy(c.potential(), alpha_eff, zs[i]).trace() - eta(c, zs[i]));
    });
    return finish("kp_identity", *std::max_element(diff.begin(), diff.end()), 1e-8);
}

PropertyCheck check_torus_containment(const RationalFlux& f, double beta, int max_side)
{
    const long long q = f.q();
    const int side = std::min<long long>(max_side, 64);
    if (q > side)
        return {"torus_containment", true, 0.0, 1e-9, "skipped: q exceeds the dense torus size"};
    const int L = static_cast<int>(side / q);
    const auto bands = harper_spectrum(f, beta);
    double worst = 0.0;
    for (double e : torus_oracle(f, beta, L)) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& b : bands.bands)
            d = std::min(d, e < b.lo ? b.lo - e : (e > b.hi ? e - b.hi : 0.0));
        worst = std::max(worst, d);
    }
    std::ostringstream os;
    os << "N = " << L * q;
    return finish("torus_containment", worst, 1e-9, os.str());
}

PropertyCheck check_flux_periodicity(const CouplingParams& c, const ResolvedFlux& f, double z_min, double z_max,
                                     const Exec& exec)
{
    const auto edges = analyze_edges(c, z_min, z_max, exec);
    ResolvedFlux next{f.flux.shifted(1), f.flux.shifted(1).str(), false};
    const auto a = assemble(c, edges, f, exec).continuous;
    const auto b = assemble(c, edges, next, exec).continuous;
    if (a.size() != b.size())
        return {"flux_periodicity", false, std::numeric_limits<double>::infinity(), 1e-9, "interval counts differ"};
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max({worst, std::abs(a[i].lo - b[i].lo), std::abs(a[i].hi - b[i].hi)});
    return finish("flux_periodicity", worst, 1e-9, f.flux.str() + " vs " + next.flux.str());
}

ValidationReport validate_config(const RunConfig& rc, const Exec& exec)
{
    const auto c = rc.coupling();
    const auto flux = rc.flux();
    const double hi = rc.upper();
    const double lo = rc.z_min.value_or(default_scan_floor(c.potential(), c.alpha()));

    ValidationReport r;
    r.checks.push_back(check_wronskian(c, lo, hi));
    r.checks.push_back(check_sign_alternation(c));
    r.checks.push_back(check_chambers(flux.flux, c.beta()));
    r.checks.push_back(check_kp_identity(c, lo, hi, 100, exec));
    r.checks.push_back(check_torus_containment(flux.flux, c.beta()));
    r.checks.push_back(check_flux_periodicity(c, flux, lo, hi, exec));
    return r;
}

} // namespace qgraph
