#include "qgraph/edge_solver.hpp"
#include "qgraph/errors.hpp"

#include "oracles/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qgraph;
constexpr double pi = std::numbers::pi;

namespace {

Potential mathieu(int nodes) { return Potential::sample_function(pi, nodes, [](double t) { return 10 * std::cos(2 * t); }); }

} // namespace

TEST_CASE("free solutions match sin and cos")
{
    const auto p = Potential::zero(pi);
    for (double z : {2.0, 0.37, 17.5}) {
        const double w = std::sqrt(z);
        const auto s = integrate_basis(p, z);
        CHECK(s.u1_l == doctest::Approx(std::sin(w * pi) / w).epsilon(1e-10));
        CHECK(s.du1_l == doctest::Approx(std::cos(w * pi)).epsilon(1e-10));
        CHECK(s.u2_l == doctest::Approx(std::cos(w * pi)).epsilon(1e-10));
        CHECK(s.du2_l == doctest::Approx(-w * std::sin(w * pi)).epsilon(1e-10));
    }
    const auto s0 = integrate_basis(p, 0.0);
    CHECK(s0.u1_l == doctest::Approx(pi).epsilon(1e-12));
    CHECK(s0.du1_l == doctest::Approx(1.0));
    const auto sn = integrate_basis(p, -1.0);
    CHECK(sn.u1_l == doctest::Approx(std::sinh(pi)).epsilon(1e-10));
    CHECK(sn.u2_l == doctest::Approx(std::cosh(pi)).epsilon(1e-10));
}

TEST_CASE("Wronskian stays at 1 on the scan range")
{
    const auto p = mathieu(801);
    const auto step = Potential::piecewise_constant({0.0, pi / 2, pi}, {0.0, 10.0});
    for (double z : {-11.6, -2.0, -1.0, 0.0, 3.3, 20.0, 120.0, 400.0}) {
        CHECK(std::abs(integrate_basis(p, z).wronskian_defect) < 1e-8);
        CHECK(std::abs(integrate_basis(step, z).wronskian_defect) < 1e-8);
    }
    // The stored doubles reproduce W to their rounding floor.
    for (double z : {-2.0, 3.3, 120.0}) {
        const auto s = integrate_basis(step, z);
        const double scale = std::abs(s.du1_l * s.u2_l) + std::abs(s.u1_l * s.du2_l);
        CHECK(std::abs(s.wronskian() - 1.0) < 1e-9 * std::max(1.0, scale));
    }
    for (double z : {0.5, 4.0, 30.0})
        CHECK(std::abs(integrate_basis(Potential::zero(pi), z).wronskian() - 1.0) < 1e-9);
}

TEST_CASE("step policy and Richardson estimate")
{
    const auto p = Potential::zero(pi);
    CHECK(step_count(p, 1.0) >= 2048);
    CHECK(step_count(p, 1e4) > step_count(p, 1.0));
    CHECK(richardson_error(p, 30.0) < 1e-10);
    const auto step = Potential::piecewise_constant({0.0, pi / 2, pi}, {0.0, 10.0});
    CHECK(richardson_error(step, -1.0) < 1e-10);
}

TEST_CASE("free Dirichlet eigenvalues are (k + 1)^2")
{
    const auto mu = dirichlet_eigenvalues(Potential::zero(pi), 8);
    REQUIRE(mu.size() == 9);
    for (int k = 0; k <= 8; ++k)
        CHECK(std::abs(mu[k] - (k + 1.0) * (k + 1.0)) < 1e-8);
}

TEST_CASE("constant potential shifts the spectrum")
{
    const auto mu = dirichlet_eigenvalues(Potential::constant(2.0, -3.5), 4);
    for (int k = 0; k <= 4; ++k) {
        const double w = (k + 1) * pi / 2.0;
        CHECK(std::abs(mu[k] - (w * w - 3.5)) < 1e-8);
    }
}

TEST_CASE("Mathieu Dirichlet eigenvalues match finite differences")
{
    const auto fd = oracle::fd_dirichlet([](double t) { return 10 * std::cos(2 * t); }, pi, 2000, 4);
    const auto mu = dirichlet_eigenvalues(mathieu(4001), 3);
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(mu[k] - fd[k]) < 1e-4);
}

TEST_CASE("Mathieu Dirichlet eigenvalues match a high-order reference")
{
    // DOP853, rtol 1e-13, exact cosine; linear interpolation on 20001 nodes
    // limits the agreement to about 1e-7.
    const double ref[] = {-5.79008059863772, 2.099460445486731, 9.236327713694283, 16.648219937169884};
    const auto mu = dirichlet_eigenvalues(mathieu(20001), 3);
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(mu[k] - ref[k]) < 2e-7);
}

TEST_CASE("Pruefer count brackets each eigenvalue")
{
    const auto p = Potential::piecewise_constant({0.0, 1.0, pi}, {4.0, -2.0});
    const auto mu = dirichlet_eigenvalues(p, 5);
    for (std::size_t k = 0; k < mu.size(); ++k) {
        CHECK(dirichlet_count(p, mu[k] - 1e-6) == static_cast<int>(k));
        CHECK(dirichlet_count(p, mu[k] + 1e-6) == static_cast<int>(k) + 1);
        CHECK(std::abs(integrate_basis(p, mu[k]).u1_l) < 1e-10);
        CHECK(mu.eigenvalues[k].dz_u1 != 0.0);
    }
    const auto through = dirichlet_eigenvalues_through(p, mu[3]);
    CHECK(through.size() == 5);
}

TEST_CASE("Krein matrix closed form and pole guard")
{
    const auto p = Potential::zero(pi);
    const double z = 2.0, w = std::sqrt(z);
    const auto s = krein_matrix(p, z);
    const double u1 = std::sin(w * pi) / w, c = std::cos(w * pi);
    CHECK(s.s11 == doctest::Approx(-c / u1).epsilon(1e-10));
    CHECK(s.s22 == doctest::Approx(-c / u1).epsilon(1e-10));
    CHECK(s.s12 == doctest::Approx(1.0 / u1).epsilon(1e-10));
    CHECK(s.s12 == s.s21);
    try {
        krein_matrix(p, 4.0);
        FAIL("expected PoleProximityError");
    } catch (const PoleProximityError& e) {
        CHECK(std::abs(e.nearest_mu - 4.0) < 1e-8);
    }
}
