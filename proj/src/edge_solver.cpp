#include "qgraph/edge_solver.hpp"

#include "qgraph/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qgraph {

namespace {

constexpr double pi = std::numbers::pi;

// Classical RK4 over the affine segments of the potential. `rhs(V, y)` returns
// dy/dt at a point where the potential equals V; `observe(y)` runs after every
// step. Returns early once the state is non-finite.
template <typename T, std::size_t N, typename Rhs, typename Observe>
std::array<T, N> rk4(const Potential& p, int total_steps, std::array<T, N> y, Rhs&& rhs, Observe&& observe)
{
    const double length = p.length();
    for (const auto& seg : p.segments()) {
        const double span = seg.t1 - seg.t0;
        const int n = std::max(1, static_cast<int>(std::ceil(total_steps * span / length - 1e-9)));
        const T h = static_cast<T>(span) / n;
        for (int j = 0; j < n; ++j) {
            const T v0 = seg.v0 + seg.slope * (j * h);
            const T vm = seg.v0 + seg.slope * ((j + 0.5) * h);
            const T v1 = seg.v0 + seg.slope * ((j + 1) * h);

            const auto k1 = rhs(v0, y);
            std::array<T, N> tmp;
            for (std::size_t i = 0; i < N; ++i)
                tmp[i] = y[i] + 0.5 * h * k1[i];
            const auto k2 = rhs(vm, tmp);
            for (std::size_t i = 0; i < N; ++i)
                tmp[i] = y[i] + 0.5 * h * k2[i];
            const auto k3 = rhs(vm, tmp);
            for (std::size_t i = 0; i < N; ++i)
                tmp[i] = y[i] + h * k3[i];
            const auto k4 = rhs(v1, tmp);
            for (std::size_t i = 0; i < N; ++i)
                y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            observe(y);
            // Once the state has overflowed, the rest of the walk is wasted.
            if ((j & 255) == 255 && !std::isfinite(y[0] + y[N - 1]))
                return y;
        }
    }
    return y;
}

struct NoObserver {
    template <typename T>
    void operator()(const T&) const {}
};

template <typename T, std::size_t N>
void require_finite_state(const std::array<T, N>& y, double z)
{
    for (T v : y) {
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "integrate_basis: non-finite solution values at z = " << z
               << "; the scan range reaches too far below the potential for this edge length, "
                  "raise z_min";
            throw OverflowError(os.str());
        }
    }
}

// Extended precision: the basis values feed eta, whose absolute accuracy
// matters where the solutions grow exponentially.
using Wide = long double;

std::array<Wide, 4> basis_state(const Potential& p, double z, int steps)
{
    auto rhs = [z](Wide v, const std::array<Wide, 4>& y) {
        const Wide w = v - z;
        return std::array<Wide, 4>{y[1], w * y[0], y[3], w * y[2]};
    };
    auto y = rk4<Wide, 4>(p, steps, {0, 1, 1, 0}, rhs, NoObserver{});
    require_finite_state(y, z);
    return y;
}

double nearest_root_estimate(const Potential& p, double z, const IntegrationOptions& opts)
{
    double x = z;
    for (int it = 0; it < 8; ++it) {
        const auto pr = probe_dirichlet(p, x, opts);
        if (pr.dz_u1_l == 0.0)
            break;
        const double step = pr.u1_l / pr.dz_u1_l;
        x -= step;
        if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(x)))
            break;
    }
    return x;
}

} // namespace

int step_count(const Potential& p, double z, const IntegrationOptions& opts)
{
    const double spread = std::max({std::abs(z - p.min()), std::abs(z - p.max()), 1.0});
    const double phase = p.length() * std::sqrt(spread);
    const double needed = std::ceil(phase / opts.max_phase_step);
    return std::max(opts.min_steps, static_cast<int>(std::min(needed, 5.0e7)));
}

SolutionPair integrate_basis(const Potential& p, double z, const IntegrationOptions& opts)
{
    if (!std::isfinite(z))
        throw DomainError("integrate_basis: z must be finite");
    const auto y = basis_state(p, z, step_count(p, z, opts));
    const Wide w = y[1] * y[2] - y[0] * y[3];
    return {z,
            static_cast<double>(y[0]),
            static_cast<double>(y[1]),
            static_cast<double>(y[2]),
            static_cast<double>(y[3]),
            static_cast<double>(w - 1)};
}

double richardson_error(const Potential& p, double z, const IntegrationOptions& opts)
{
    const int n = step_count(p, z, opts);
    const auto coarse = basis_state(p, z, n);
    const auto fine = basis_state(p, z, 2 * n);
    double err = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        err = std::max(err, static_cast<double>(std::abs(fine[i] - coarse[i]) / 15 / std::max<Wide>(1, std::abs(fine[i]))));
    return err;
}

DirichletProbe probe_dirichlet(const Potential& p, double z, const IntegrationOptions& opts)
{
    // y = (u1, u1', u2, u2', v, v', |u1|^2 integral), v = du1/dz solves
    // v'' = (V - z) v - u1 with v(0) = v'(0) = 0.
    auto rhs = [z](double v, const std::array<double, 7>& y) {
        const double w = v - z;
        return std::array<double, 7>{y[1], w * y[0], y[3], w * y[2], y[5], w * y[4] - y[0], y[0] * y[0]};
    };
    const auto y = rk4<double, 7>(p, step_count(p, z, opts), {0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0}, rhs, NoObserver{});
    require_finite_state(y, z);
    return {z, y[0], y[1], y[2], y[4], y[6]};
}

double pruefer_angle(const Potential& p, double z, const IntegrationOptions& opts)
{
    auto rhs = [z](double v, const std::array<double, 2>& y) {
        return std::array<double, 2>{y[1], (v - z) * y[0]};
    };
    double angle = 0.0;
    double last = 0.0; // atan2(0, 1)
    auto observe = [&](const std::array<double, 2>& y) {
        const double a = std::atan2(y[0], y[1]);
        double d = a - last;
        if (d > pi)
            d -= 2.0 * pi;
        else if (d <= -pi)
            d += 2.0 * pi;
        angle += d;
        last = a;
    };
    const auto y = rk4<double, 2>(p, step_count(p, z, opts), {0.0, 1.0}, rhs, observe);
    require_finite_state(y, z);
    return angle;
}

int dirichlet_count(const Potential& p, double z, const IntegrationOptions& opts)
{
    return std::max(0, static_cast<int>(std::floor(pruefer_angle(p, z, opts) / pi)));
}

double dirichlet_seed(const Potential& p, int k)
{
    const double w = (k + 1) * pi / p.length();
    return w * w + p.mean();
}

std::vector<double> DirichletSpectrum::values() const
{
    std::vector<double> out;
    out.reserve(eigenvalues.size());
    for (const auto& e : eigenvalues)
        out.push_back(e.mu);
    return out;
}

namespace {

DirichletEigenvalue find_eigenvalue(const Potential& p, int k, double tol, const IntegrationOptions& opts)
{
    const double unit = (pi / p.length()) * (pi / p.length());
    const double width = std::max(1.0, (2 * k + 3) * unit) + (p.max() - p.min());
    const double floor = p.min() - 1.0; // every Dirichlet eigenvalue exceeds min V
    const double guess = dirichlet_seed(p, k);

    double a = std::max(guess - width, floor);
    double b = guess + width;
    int na = dirichlet_count(p, a, opts);
    int nb = dirichlet_count(p, b, opts);
    for (int it = 0; !(na <= k && nb >= k + 1); ++it) {
        if (it >= 60) {
            std::ostringstream os;
            os << "dirichlet_eigenvalues: could not bracket mu_" << k << " in [" << a << ", " << b << "]";
            throw NumericalSearchError(os.str(), a, b);
        }
        const double grow = width * std::ldexp(1.0, it);
        if (na > k) {
            a = std::max(a - grow, floor);
            na = dirichlet_count(p, a, opts);
        }
        if (nb < k + 1) {
            b += grow;
            nb = dirichlet_count(p, b, opts);
        }
    }

    // Isolate mu_k: count(a) == k, count(b) == k + 1.
    while (!(na == k && nb == k + 1)) {
        const double m = 0.5 * (a + b);
        const int nm = dirichlet_count(p, m, opts);
        if (nm <= k) {
            a = m;
            na = nm;
        } else {
            b = m;
            nb = nm;
        }
        if (b - a < tol * std::max(1.0, std::abs(a))) {
            std::ostringstream os;
            os << "dirichlet_eigenvalues: eigenvalue cluster near " << a << " not separable";
            throw NumericalSearchError(os.str(), a, b);
        }
    }

    // Exactly one sign change of u1(l; .) in (a, b): safeguarded Newton.
    const double fa = integrate_basis(p, a, opts).u1_l;
    double x = 0.5 * (a + b);
    double step = b - a;
    DirichletProbe pr{};
    for (int it = 0; it < 200; ++it) {
        pr = probe_dirichlet(p, x, opts);
        if (pr.u1_l == 0.0)
            break;
        if ((pr.u1_l > 0.0) == (fa > 0.0))
            a = x;
        else
            b = x;
        double next = x - pr.u1_l / pr.dz_u1_l;
        if (!std::isfinite(next) || next <= a || next >= b)
            next = 0.5 * (a + b);
        step = std::abs(next - x);
        x = next;
        if (step < tol * std::max(1.0, std::abs(x)) || (b - a) < tol * std::max(1.0, std::abs(x)))
            break;
    }
    pr = probe_dirichlet(p, x, opts);
    if (!(std::abs(pr.dz_u1_l) > 0.0)) {
        std::ostringstream os;
        os << "dirichlet_eigenvalues: mu_" << k << " = " << x << " is not a simple zero of u1(l; z)";
        throw ConsistencyError(os.str());
    }
    return {x, std::min(step, 0.5 * (b - a)), pr.dz_u1_l};
}

} // namespace

DirichletSpectrum dirichlet_eigenvalues(const Potential& p, int k_max, double tol, const IntegrationOptions& opts)
{
    if (k_max < 0)
        throw DomainError("dirichlet_eigenvalues: k_max must be >= 0");
    if (!(tol > 0.0))
        throw DomainError("dirichlet_eigenvalues: tol must be > 0");
    DirichletSpectrum out;
    out.eigenvalues.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        auto e = find_eigenvalue(p, k, tol, opts);
        if (!out.eigenvalues.empty() && !(e.mu > out.eigenvalues.back().mu))
            throw ConsistencyError("dirichlet_eigenvalues: eigenvalues not strictly increasing");
        out.eigenvalues.push_back(e);
    }
    return out;
}

DirichletSpectrum dirichlet_eigenvalues_through(const Potential& p, double z_max, double tol,
                                                const IntegrationOptions& opts)
{
    const int below = z_max > p.min() ? dirichlet_count(p, z_max, opts) : 0;
    return dirichlet_eigenvalues(p, below, tol, opts);
}

KreinMatrix krein_matrix(const Potential& p, double z, double mu_guard, const IntegrationOptions& opts)
{
    const auto sp = integrate_basis(p, z, opts);
    if (!(std::abs(sp.u1_l) > mu_guard)) {
        const double mu = nearest_root_estimate(p, z, opts);
        std::ostringstream os;
        os.precision(15);
        os << "krein_matrix: z = " << z << " lies within the pole guard of mu = " << mu
           << "; evaluate the discriminant instead";
        throw PoleProximityError(os.str(), mu);
    }
    const double inv = 1.0 / sp.u1_l;
    return {-sp.u2_l * inv, inv, inv, -sp.du1_l * inv};
}

} // namespace qgraph
