#pragma once

#include "qgraph/parallel.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qgraph {

/// Reduced fraction p/q, q >= 1.
class RationalFlux {
public:
    RationalFlux(long long p, long long q);

    /// Parses "p/q" (whitespace tolerated) or an integer.
    static RationalFlux parse(const std::string& text);

    long long p() const { return p_; }
    long long q() const { return q_; }
    double value() const { return static_cast<double>(p_) / static_cast<double>(q_); }
    bool is_integer() const { return q_ == 1; }

    RationalFlux shifted(long long n) const { return {p_ + n * q_, q_}; }
    RationalFlux negated() const { return {-p_, q_}; }
    std::string str() const;

    friend bool operator==(const RationalFlux&, const RationalFlux&) = default;

private:
    long long p_;
    long long q_;
};

using ComplexMatrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>;

/// Magnetic Bloch fiber of M(theta, beta) at momenta (k1, k2): q x q Hermitian,
/// diagonal 2 beta^2 cos(2 pi theta j + k2), hopping e^{+-i k1} between
/// neighbouring j (mod q, contributions accumulate for q <= 2).
ComplexMatrix bloch_matrix(const RationalFlux& f, double beta, double k1, double k2);

std::vector<double> bloch_eigenvalues(const RationalFlux& f, double beta, double k1, double k2);

/// Momentum-independent polynomial
///   P(E) = det(E - H(k1, k2)) + 2 cos(q k1) + 2 beta^{2q} cos(q k2).
/// Stored by its roots: at the reference momenta (pi/(2q), pi/(2q)) both
/// cosine terms vanish, so P(E) = prod (E - lambda_i) over that fiber. The
/// product form stays accurate at large q where a monomial fit does not.
class ChambersPolynomial {
public:
    ChambersPolynomial(RationalFlux flux, double beta, std::vector<double> roots);

    const RationalFlux& flux() const { return flux_; }
    double beta() const { return beta_; }
    int degree() const { return static_cast<int>(roots_.size()); }
    const std::vector<double>& roots() const { return roots_; }

    /// Monomial coefficients in E, ascending powers.
    std::vector<double> coefficients() const;
    double operator()(double energy) const;

    /// 2 + 2 beta^{2q}: P(E) lies in [-bound, bound] exactly on the spectrum.
    double level_bound() const;

private:
    RationalFlux flux_;
    double beta_;
    std::vector<double> roots_;
};

/// det(E - H(k1,k2)) + 2 cos(q k1) + 2 beta^{2q} cos(q k2), straight from the fiber.
double chambers_value(const RationalFlux& f, double beta, double k1, double k2, double energy);

/// Roots from the reference fiber; verifies momentum independence and throws
/// ConsistencyError when the relative defect exceeds 1e-9.
ChambersPolynomial chambers_polynomial(const RationalFlux& f, double beta);

/// |det(E - H(k)) + 2cos(q k1) + 2 beta^{2q} cos(q k2) - P(E)| relative to
/// max(2 + 2 beta^{2q}, |P(E)|): absolute on the level set that decides the
/// spectrum, relative where |P| is large and only its rounding is resolved.
double chambers_mismatch(const ChambersPolynomial& poly, double k1, double k2, double energy);

/// max of chambers_mismatch over the k-grid and energies.
double chambers_defect(const ChambersPolynomial& poly, int k_grid, std::span<const double> energies);

struct Band {
    double lo;
    double hi;
};

struct HarperBands {
    RationalFlux flux;
    double beta;
    std::vector<Band> bands; // ordered; touching bands share an endpoint

    double total_measure() const;
    double max_abs_edge() const;
    bool contains(double energy, double tol) const;
    double norm_bound() const { return 2.0 * (1.0 + beta * beta); }
};

/// Exact band edges: roots of P(E) = +-(2 + 2 beta^{2q}), i.e. the
/// eigenvalues of H(0,0) and H(pi/q, pi/q), polished by bisection on P.
HarperBands harper_spectrum(const RationalFlux& f, double beta);

/// Band extrema from brute-force diagonalisation on an n x n momentum grid
/// spanning [0, 2pi/q)^2 plus the closing points. Oracle for harper_spectrum.
std::vector<Band> harper_kgrid_extrema(const RationalFlux& f, double beta, int n, const Exec& exec = {});

enum class TorusGauge { symmetric, landau };

/// All eigenvalues of M(theta, beta) on the N x N torus, N = L q.
/// Uses the symmetric-gauge phases of M when N theta is even, and the
/// Landau gauge otherwise. Throws SizeError when N^2 > 4096.
std::vector<double> torus_oracle(const RationalFlux& f, double beta, int L);
std::vector<double> torus_spectrum(const RationalFlux& f, double beta, int L, TorusGauge gauge);
bool symmetric_gauge_fits(const RationalFlux& f, int L);

/// Continued-fraction convergents p_k/q_k with q_k <= q_max, increasing q.
/// The zeroth convergent floor(theta)/1 is dropped unless theta is an integer
/// or nothing else fits.
std::vector<RationalFlux> approximate_irrational(double theta, long long q_max);

/// Flux as supplied by the user, and the rational value actually used.
struct ResolvedFlux {
    RationalFlux flux;
    std::string input;
    bool approximated = false; // true when a decimal was replaced by a convergent
};

/// Exact "p/q" input bypasses the continued fraction; decimal input is
/// resolved to its best convergent with q <= q_max.
ResolvedFlux resolve_flux(const std::string& input, long long q_max);
ResolvedFlux resolve_flux(double theta, long long q_max);

/// Reduced fractions p/q in [0, 1] with q <= q_max ordered by (q, p).
std::vector<RationalFlux> farey_fluxes(long long q_max);

} // namespace qgraph
