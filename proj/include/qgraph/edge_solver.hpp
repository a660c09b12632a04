#pragma once

#include "qgraph/potential.hpp"

#include <vector>

namespace qgraph {

/// Step policy of the fixed-step RK4 integrator.
///
/// The step count on [0, l] is max(min_steps, ceil(l * k / max_phase_step))
/// with k = sqrt(max |z - V|, 1), i.e. at most max_phase_step radians of
/// oscillation (or e-folding) per step. Steps never straddle a breakpoint or
/// sampling node of the potential.
struct IntegrationOptions {
    int min_steps = 2048;
    double max_phase_step = 1e-3;
};

/// Values at t = l of the canonical solutions of -u'' + (V - z) u = 0 with
/// u1(0)=0, u1'(0)=1 and u2(0)=1, u2'(0)=0.
struct SolutionPair {
    double z;
    double u1_l;
    double du1_l;
    double u2_l;
    double du2_l;
    /// W - 1 evaluated in the integrator's working precision, before the
    /// values above are rounded to double.
    double wronskian_defect;

    /// du1 * u2 - u1 * du2 of the stored values, identically 1 for the exact
    /// solutions. Loses absolute accuracy once |u| |u'| is large.
    double wronskian() const { return du1_l * u2_l - u1_l * du2_l; }
};

SolutionPair integrate_basis(const Potential& p, double z, const IntegrationOptions& opts = {});

/// Step-halving estimate of the global integration error of integrate_basis,
/// |Y_n - Y_2n| / 15 relative to max(1, |Y_2n|), maximised over components.
double richardson_error(const Potential& p, double z, const IntegrationOptions& opts = {});

int step_count(const Potential& p, double z, const IntegrationOptions& opts = {});

/// u1 at t = l together with its z-derivative (variational equation) and
/// the norm integral of u1, used for root polishing and simplicity checks.
struct DirichletProbe {
    double z;
    double u1_l;
    double du1_l;
    double u2_l;
    double dz_u1_l;      // d u1(l; z) / dz
    double u1_norm_sq;   // integral of u1(t; z)^2 over [0, l]
};

DirichletProbe probe_dirichlet(const Potential& p, double z, const IntegrationOptions& opts = {});

/// Unwrapped Pruefer angle atan2(u1, u1') of u1 at t = l.
double pruefer_angle(const Potential& p, double z, const IntegrationOptions& opts = {});

/// Number of Dirichlet eigenvalues strictly below z.
int dirichlet_count(const Potential& p, double z, const IntegrationOptions& opts = {});

struct DirichletEigenvalue {
    double mu;
    double tolerance; // final bracket half-width
    double dz_u1;     // d u1(l; z)/dz at mu, nonzero for a simple root
};

struct DirichletSpectrum {
    std::vector<DirichletEigenvalue> eigenvalues; // strictly increasing

    std::size_t size() const { return eigenvalues.size(); }
    double operator[](std::size_t k) const { return eigenvalues[k].mu; }
    std::vector<double> values() const;
};

/// First k_max + 1 eigenvalues of -d^2/dt^2 + V with Dirichlet conditions.
DirichletSpectrum dirichlet_eigenvalues(const Potential& p, int k_max, double tol = 1e-12,
                                        const IntegrationOptions& opts = {});

/// All Dirichlet eigenvalues below z_max plus the first one above it.
DirichletSpectrum dirichlet_eigenvalues_through(const Potential& p, double z_max, double tol = 1e-12,
                                                const IntegrationOptions& opts = {});

/// Asymptotic seed ((k+1) pi / l)^2 + mean(V).
double dirichlet_seed(const Potential& p, int k);

/// 2x2 Dirichlet-to-Neumann (Krein) matrix s(z); s12 == s21 exactly.
struct KreinMatrix {
    double s11;
    double s12;
    double s21;
    double s22;
};

/// Throws PoleProximityError (carrying the nearest mu_k) when |u1(l; z)| <= mu_guard.
KreinMatrix krein_matrix(const Potential& p, double z, double mu_guard = 1e-8,
                         const IntegrationOptions& opts = {});

} // namespace qgraph
