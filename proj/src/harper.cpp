#include "qgraph/harper.hpp"

#include "qgraph/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace qgraph {

namespace {

constexpr double pi = std::numbers::pi;

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

long long parse_integer(const std::string& text, const std::string& whole)
{
    const auto t = trim(text);
    long long v = 0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (!t.empty() && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (t.empty() || ec != std::errc{} || ptr != last)
        throw ParseError("theta: cannot parse '" + whole + "' as p/q");
    return v;
}

// e^{i pi num / den} with the argument reduced mod 2 before scaling.
std::complex<double> half_turn_phase(long long num, long long den)
{
    long long r = num % (2 * den);
    if (r < 0)
        r += 2 * den;
    return std::polar(1.0, pi * static_cast<double>(r) / static_cast<double>(den));
}

} // namespace

RationalFlux::RationalFlux(long long p, long long q)
{
    if (q == 0)
        throw ValidationError("theta: denominator must be nonzero");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    const long long g = std::gcd(p, q);
    p_ = p / g;
    q_ = q / g;
}

RationalFlux RationalFlux::parse(const std::string& text)
{
    const auto slash = text.find('/');
    if (slash == std::string::npos)
        return {parse_integer(text, text), 1};
    const long long p = parse_integer(text.substr(0, slash), text);
    const long long q = parse_integer(text.substr(slash + 1), text);
    return {p, q};
}

std::string RationalFlux::str() const { return std::to_string(p_) + "/" + std::to_string(q_); }

ComplexMatrix bloch_matrix(const RationalFlux& f, double beta, double k1, double k2)
{
    const auto q = static_cast<Eigen::Index>(f.q());
    const double b2 = beta * beta;
    ComplexMatrix h = ComplexMatrix::Zero(q, q);
    const auto hop = std::polar(1.0, k1);
    for (Eigen::Index j = 0; j < q; ++j) {
        // 2 pi theta j reduced through the integer numerator: 2 pi (p j mod q) / q
        const long long r = (f.p() * static_cast<long long>(j)) % f.q();
        const double phase = 2.0 * pi * static_cast<double>(r) / static_cast<double>(f.q());
        h(j, j) += 2.0 * b2 * std::cos(phase + k2);
        h(j, (j + 1) % q) += hop;
        h(j, (j + q - 1) % q) += std::conj(hop);
    }
    return h;
}

std::vector<double> bloch_eigenvalues(const RationalFlux& f, double beta, double k1, double k2)
{
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(bloch_matrix(f, beta, k1, k2), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double chambers_value(const RationalFlux& f, double beta, double k1, double k2, double energy)
{
    double det = 1.0;
    for (double lambda : bloch_eigenvalues(f, beta, k1, k2))
        det *= energy - lambda;
    const double q = static_cast<double>(f.q());
    return det + 2.0 * std::cos(q * k1) + 2.0 * std::pow(beta * beta, q) * std::cos(q * k2);
}

ChambersPolynomial::ChambersPolynomial(RationalFlux flux, double beta, std::vector<double> roots)
    : flux_(flux), beta_(beta), roots_(std::move(roots))
{
}

std::vector<double> ChambersPolynomial::coefficients() const
{
    std::vector<double> c{1.0};
    for (double r : roots_) {
        // c <- c * (E - r)
        c.push_back(0.0);
        for (std::size_t i = c.size() - 1; i > 0; --i)
            c[i] = c[i - 1] - r * c[i];
        c[0] *= -r;
    }
    return c;
}

double ChambersPolynomial::operator()(double energy) const
{
    double acc = 1.0;
    for (double r : roots_)
        acc *= energy - r;
    return acc;
}

double ChambersPolynomial::level_bound() const
{
    return 2.0 + 2.0 * std::pow(beta_ * beta_, static_cast<double>(flux_.q()));
}

double chambers_mismatch(const ChambersPolynomial& poly, double k1, double k2, double energy)
{
    const double p = poly(energy);
    const double d = chambers_value(poly.flux(), poly.beta(), k1, k2, energy) - p;
    return std::abs(d) / std::max(poly.level_bound(), std::abs(p));
}

ChambersPolynomial chambers_polynomial(const RationalFlux& f, double beta)
{
    const int q = static_cast<int>(f.q());
    const double scale = 2.0 * (1.0 + beta * beta);
    const double kref = pi / (2.0 * q);
    ChambersPolynomial poly(f, beta, bloch_eigenvalues(f, beta, kref, kref));

    const std::vector<double> probe{-0.9 * scale, -0.31 * scale, 0.05 * scale, 0.62 * scale};
    double defect = 0.0;
    for (const auto& [k1, k2] : {std::pair{0.0, 0.0}, std::pair{0.7, 2.1}, std::pair{pi / q, 0.3}}) {
        for (double e : probe)
            defect = std::max(defect, chambers_mismatch(poly, k1, k2, e));
    }
    if (defect > 1e-9) {
        std::ostringstream os;
        os << "chambers_polynomial: momentum-independence defect " << defect << " for theta = " << f.str();
        throw ConsistencyError(os.str());
    }
    return poly;
}

double chambers_defect(const ChambersPolynomial& poly, int k_grid, std::span<const double> energies)
{
    double defect = 0.0;
    for (int a = 0; a < k_grid; ++a) {
        for (int b = 0; b < k_grid; ++b) {
            const double k1 = 2.0 * pi * a / k_grid;
            const double k2 = 2.0 * pi * b / k_grid;
            for (double e : energies) {
                defect = std::max(defect, chambers_mismatch(poly, k1, k2, e));
            }
        }
    }
    return defect;
}

double HarperBands::total_measure() const
{
    double m = 0.0;
    for (const auto& b : bands)
        m += b.hi - b.lo;
    return m;
}

double HarperBands::max_abs_edge() const
{
    double m = 0.0;
    for (const auto& b : bands)
        m = std::max({m, std::abs(b.lo), std::abs(b.hi)});
    return m;
}

bool HarperBands::contains(double energy, double tol) const
{
    return std::any_of(bands.begin(), bands.end(),
                       [&](const Band& b) { return energy >= b.lo - tol && energy <= b.hi + tol; });
}

namespace {

// Bisection polish of a root of P(E) = level near an eigenvalue estimate.
// P is evaluated at the reference momentum where both cosine terms vanish,
// so it is independent of the eigen-decomposition that produced the guess.
double polish_edge(const std::vector<double>& ref_eigs, double level, double guess, double scale)
{
    auto g = [&](double e) {
        double det = 1.0;
        for (double lambda : ref_eigs)
            det *= e - lambda;
        return det - level;
    };
    const double delta = 1e-10 * scale;
    double a = guess - delta, b = guess + delta;
    double ga = g(a), gb = g(b);
    if (!(ga < 0.0) == !(gb < 0.0))
        return guess; // double root (touching bands) or unresolved: keep the eigenvalue
    for (int it = 0; it < 80 && b - a > 0.0; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b)
            break;
        const double gm = g(m);
        if ((gm < 0.0) == (ga < 0.0)) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    const double polished = 0.5 * (a + b);
    return std::abs(g(polished)) <= std::abs(g(guess)) ? polished : guess;
}

} // namespace

HarperBands harper_spectrum(const RationalFlux& f, double beta)
{
    const double q = static_cast<double>(f.q());
    const double bound = 2.0 + 2.0 * std::pow(beta * beta, q);
    const double norm = 2.0 * (1.0 + beta * beta);
    const double kref = pi / (2.0 * q);
    const auto ref = bloch_eigenvalues(f, beta, kref, kref);

    std::vector<double> edges;
    edges.reserve(2 * f.q());
    for (double e : bloch_eigenvalues(f, beta, 0.0, 0.0))
        edges.push_back(polish_edge(ref, bound, e, norm));
    for (double e : bloch_eigenvalues(f, beta, pi / q, pi / q))
        edges.push_back(polish_edge(ref, -bound, e, norm));
    std::sort(edges.begin(), edges.end());

    HarperBands out{f, std::abs(beta), {}};
    for (std::size_t i = 0; i + 1 < edges.size(); i += 2)
        out.bands.push_back({std::max(edges[i], -norm), std::min(edges[i + 1], norm)});
    // Bands that touch (even q at E = 0) share one edge value.
    for (std::size_t j = 0; j + 1 < out.bands.size(); ++j) {
        auto& a = out.bands[j];
        auto& b = out.bands[j + 1];
        if (b.lo - a.hi <= 1e-12 * norm) {
            const double mid = 0.5 * (a.hi + b.lo);
            a.hi = mid;
            b.lo = mid;
        }
    }
    return out;
}

std::vector<Band> harper_kgrid_extrema(const RationalFlux& f, double beta, int n, const Exec& exec)
{
    const long long q = f.q();
    // Round the grid to a multiple of 2q so the extremal momenta 0 and pi/q are hit.
    const long long grid = ((std::max(n, 1) + 2 * q - 1) / (2 * q)) * (2 * q);
    const auto points = static_cast<std::size_t>(grid * grid);
    std::vector<std::vector<double>> eigs(points);
    parallel_for(points, exec, [&](std::size_t i) {
        const double k1 = 2.0 * pi * static_cast<double>(i / grid) / static_cast<double>(grid);
        const double k2 = 2.0 * pi * static_cast<double>(i % grid) / static_cast<double>(grid);
        eigs[i] = bloch_eigenvalues(f, beta, k1, k2);
    });
    std::vector<Band> bands(static_cast<std::size_t>(q), Band{1e300, -1e300});
    for (const auto& ev : eigs)
        for (std::size_t j = 0; j < ev.size(); ++j) {
            bands[j].lo = std::min(bands[j].lo, ev[j]);
            bands[j].hi = std::max(bands[j].hi, ev[j]);
        }
    return bands;
}

bool symmetric_gauge_fits(const RationalFlux& f, int L)
{
    // N theta = L p must be even for the symmetric-gauge phases to close on the torus.
    return (static_cast<long long>(L) * f.p()) % 2 == 0;
}

std::vector<double> torus_spectrum(const RationalFlux& f, double beta, int L, TorusGauge gauge)
{
    if (L < 1)
        throw DomainError("torus_oracle: L must be >= 1");
    const long long n = L * f.q();
    if (n * n > 4096)
        throw SizeError("torus_oracle: N^2 = " + std::to_string(n * n) + " exceeds the dense limit 4096");
    if (gauge == TorusGauge::symmetric && !symmetric_gauge_fits(f, L))
        throw DomainError("torus_oracle: symmetric gauge needs N theta even");

    const auto dim = static_cast<Eigen::Index>(n * n);
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    const double b2 = beta * beta;
    auto site = [n](long long m, long long k) {
        return static_cast<Eigen::Index>(((m % n + n) % n) + n * ((k % n + n) % n));
    };
    for (long long m = 0; m < n; ++m) {
        for (long long k = 0; k < n; ++k) {
            const auto row = site(m, k);
            if (gauge == TorusGauge::symmetric) {
                // (Mg)_{m,n} = e^{i pi n theta} g_{m+1,n} + e^{-i pi n theta} g_{m-1,n}
                //            + beta^2 (e^{-i pi m theta} g_{m,n+1} + e^{i pi m theta} g_{m,n-1})
                const auto px = half_turn_phase(f.p() * k, f.q());
                const auto py = half_turn_phase(-f.p() * m, f.q());
                h(row, site(m + 1, k)) += px;
                h(row, site(m - 1, k)) += std::conj(px);
                h(row, site(m, k + 1)) += b2 * py;
                h(row, site(m, k - 1)) += b2 * std::conj(py);
            } else {
                const auto py = half_turn_phase(2 * f.p() * m, f.q());
                h(row, site(m + 1, k)) += 1.0;
                h(row, site(m - 1, k)) += 1.0;
                h(row, site(m, k + 1)) += b2 * py;
                h(row, site(m, k - 1)) += b2 * std::conj(py);
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> torus_oracle(const RationalFlux& f, double beta, int L)
{
    return torus_spectrum(f, beta, L, symmetric_gauge_fits(f, L) ? TorusGauge::symmetric : TorusGauge::landau);
}

std::vector<RationalFlux> approximate_irrational(double theta, long long q_max)
{
    if (!std::isfinite(theta))
        throw DomainError("approximate_irrational: theta must be finite");
    if (q_max < 1)
        throw DomainError("approximate_irrational: q_max must be >= 1");

    std::vector<RationalFlux> out;
    long long h_prev = 1, h_prev2 = 0; // h_{-1}, h_{-2}
    long long k_prev = 0, k_prev2 = 1;
    double x = theta;
    for (int term = 0; term < 64; ++term) {
        const double a_real = std::floor(x);
        if (std::abs(a_real) > 9e15)
            break;
        const auto a = static_cast<long long>(a_real);
        const long long h = a * h_prev + h_prev2;
        const long long k = a * k_prev + k_prev2;
        if (k > q_max)
            break;
        out.emplace_back(h, k);
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        const double frac = x - a_real;
        if (frac < 1e-12 || std::abs(out.back().value() - theta) < 1e-15 * std::max(1.0, std::abs(theta)))
            break;
        x = 1.0 / frac;
    }
    const bool integer = theta == std::floor(theta);
    if (!integer && out.size() > 1)
        out.erase(out.begin());
    return out;
}

ResolvedFlux resolve_flux(double theta, long long q_max)
{
    const auto conv = approximate_irrational(theta, q_max);
    const auto& best = conv.back();
    char buf[64];
    const auto end = std::to_chars(buf, buf + sizeof buf, theta).ptr;
    return {best, std::string(buf, end), best.value() != theta};
}

ResolvedFlux resolve_flux(const std::string& input, long long q_max)
{
    const auto t = trim(input);
    if (t.find('/') != std::string::npos)
        return {RationalFlux::parse(t), t, false};
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
        throw ParseError("theta: cannot parse '" + input + "' as a number or p/q");
    auto r = resolve_flux(v, q_max);
    r.input = t;
    return r;
}

std::vector<RationalFlux> farey_fluxes(long long q_max)
{
    if (q_max < 1)
        throw DomainError("farey_fluxes: q_max must be >= 1");
    std::vector<RationalFlux> out;
    for (long long q = 1; q <= q_max; ++q)
        for (long long p = 0; p <= q; ++p)
            if (std::gcd(p, q) == 1)
                out.emplace_back(p, q);
    return out;
}

} // namespace qgraph
