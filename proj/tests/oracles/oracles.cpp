#include "oracles/oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

std::vector<double> fd_dirichlet(const std::function<double(double)>& v, double l, int n, int count)
{
    const double h = l / n;
    Eigen::VectorXd diag(n - 1), off(n - 2);
    for (int i = 0; i < n - 1; ++i)
        diag(i) = 2.0 / (h * h) + v((i + 1) * h);
    off.setConstant(-1.0 / (h * h));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    return {es.eigenvalues().data(), es.eigenvalues().data() + count};
}

double free_eta(double z, double l, double alpha, double beta)
{
    double c = 0.0, s = 0.0; // cos(w l), sin(w l) / w
    if (z > 0.0) {
        const double w = std::sqrt(z);
        c = std::cos(w * l);
        s = std::sin(w * l) / w;
    } else if (z < 0.0) {
        const double w = std::sqrt(-z);
        c = std::cosh(w * l);
        s = std::sinh(w * l) / w;
    } else {
        c = 1.0;
        s = l;
    }
    return (1.0 + beta * beta) * 2.0 * c + alpha * s;
}

double bisect(const std::function<double(double)>& f, double a, double b, double tol)
{
    double fa = f(a);
    for (int i = 0; i < 300 && b - a > tol * std::max(1.0, std::abs(a)); ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0)
            return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

std::vector<std::pair<double, double>> level_set(const std::function<double(double)>& f, double level, double a,
                                                 double b, int n)
{
    auto g = [&](double z) { return std::abs(f(z)) - level; };
    std::vector<std::pair<double, double>> out;
    double prev_z = a, prev_g = g(a);
    bool inside = prev_g <= 0.0;
    double start = a;
    for (int i = 1; i <= n; ++i) {
        const double z = a + (b - a) * i / n;
        const double gz = g(z);
        if (inside && gz > 0.0) {
            out.emplace_back(start, bisect(g, prev_z, z));
            inside = false;
        } else if (!inside && gz <= 0.0) {
            start = bisect(g, prev_z, z);
            inside = true;
        }
        prev_z = z;
        prev_g = gz;
    }
    if (inside)
        out.emplace_back(start, b);
    return out;
}

namespace {

Eigen::MatrixXcd fiber(long long p, long long q, double beta, double k1, double k2)
{
    const double theta = static_cast<double>(p) / static_cast<double>(q);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(q, q);
    const std::complex<double> e(std::cos(k1), std::sin(k1));
    for (long long j = 0; j < q; ++j) {
        h(j, j) += 2.0 * beta * beta * std::cos(2.0 * std::numbers::pi * theta * static_cast<double>(j) + k2);
        h(j, (j + 1) % q) += e;
        h((j + 1) % q, j) += std::conj(e);
    }
    return h;
}

} // namespace

std::vector<std::pair<double, double>> harper_grid_bands(long long p, long long q, double beta, int n)
{
    std::vector<std::pair<double, double>> bands(q, {1e300, -1e300});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double k1 = 2.0 * std::numbers::pi * a / n;
            const double k2 = 2.0 * std::numbers::pi * b / n;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(fiber(p, q, beta, k1, k2), Eigen::EigenvaluesOnly);
            for (long long j = 0; j < q; ++j) {
                bands[j].first = std::min(bands[j].first, es.eigenvalues()(j));
                bands[j].second = std::max(bands[j].second, es.eigenvalues()(j));
            }
        }
    return bands;
}

double bloch_det(long long p, long long q, double beta, double k1, double k2, double energy)
{
    const Eigen::MatrixXcd m = energy * Eigen::MatrixXcd::Identity(q, q) - fiber(p, q, beta, k1, k2);
    return m.fullPivLu().determinant().real();
}

std::vector<std::pair<long long, long long>> convergents(double x, long long q_max)
{
    std::vector<std::pair<long long, long long>> out;
    long long h0 = 1, h1 = 0, k0 = 0, k1 = 1; // h_{-1}, h_{-2}, k_{-1}, k_{-2}
    long double r = x;
    for (int i = 0; i < 64; ++i) {
        const long long a = static_cast<long long>(std::floor(r));
        const long long h = a * h0 + h1, k = a * k0 + k1;
        if (k > q_max)
            break;
        out.emplace_back(h, k);
        h1 = h0;
        h0 = h;
        k1 = k0;
        k0 = k;
        const long double frac = r - a;
        if (frac < 1e-12L)
            break;
        r = 1.0L / frac;
    }
    return out;
}

} // namespace oracle
