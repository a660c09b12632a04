#include "qgraph/discriminant.hpp"
#include "qgraph/kp_oracle.hpp"

#include "oracles/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace qgraph;
constexpr double pi = std::numbers::pi;

TEST_CASE("free monodromy closed forms")
{
    const auto m1 = kp_monodromy(Potential::zero(pi), 0.0, 1.0);
    CHECK(m1.m[0][0] == doctest::Approx(-1.0));
    CHECK(std::abs(m1.m[0][1]) < 1e-12);
    CHECK(std::abs(m1.m[1][0]) < 1e-12);
    CHECK(m1.m[1][1] == doctest::Approx(-1.0));
    CHECK(m1.trace() == doctest::Approx(-2.0));

    const auto m0 = kp_monodromy(Potential::zero(pi), 1.0, 0.0);
    CHECK(m0.m[0][0] == doctest::Approx(1.0 + pi));
    CHECK(m0.m[0][1] == doctest::Approx(1.0));
    CHECK(m0.m[1][0] == doctest::Approx(pi));
    CHECK(m0.m[1][1] == doctest::Approx(1.0));
}

TEST_CASE("monodromy is unimodular")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> grid, vals;
        for (int j = 0; j <= 8; ++j) {
            grid.push_back(pi * j / 8);
            vals.push_back(10.0 * u(rng));
        }
        const auto p = Potential::sampled(grid, vals);
        const double alpha = 3.0 * u(rng);
        // Above max V the entries stay moderate and det is resolved to 1e-9.
        const auto m = kp_monodromy(p, alpha, p.max() + 20.0 * (1.0 + u(rng)));
        CHECK(std::abs(m.determinant() - 1.0) < 1e-9);
        // Deeper down det is a difference of large products; only the
        // rounding floor of those products is meaningful.
        const auto g = kp_monodromy(p, alpha, p.min() - 5.0 * (1.0 + u(rng)));
        const double scale = std::abs(g.m[0][0] * g.m[1][1]) + std::abs(g.m[0][1] * g.m[1][0]);
        CHECK(std::abs(g.determinant() - 1.0) < 1e-14 * std::max(1.0, scale));
    }
}

TEST_CASE("Kronig-Penney identity against the edge solver")
{
    const Potential pots[] = {Potential::zero(pi), Potential::piecewise_constant({0.0, pi / 2, pi}, {0.0, 10.0}),
                              Potential::sample_function(pi, 201, [](double t) { return 4.0 * std::sin(t) + t; })};
    for (const auto& p : pots)
        for (auto [alpha, beta] : {std::pair{0.0, 1.0}, {2.0, 1.5}, {-3.0, 0.7}}) {
            const CouplingParams c(p, alpha, beta);
            for (int i = 0; i < 20; ++i) {
                const double z = -2.0 + 3.0 * i;
                const double kp = c.weight() * kp_monodromy(p, alpha / c.weight(), z).trace();
                CHECK(std::abs(kp - eta(c, z)) < 1e-8);
            }
        }
}

TEST_CASE("classical Kronig-Penney bands")
{
    // tr M = 2 cos(w pi) + 2 sin(w pi) / w for alpha_eff = 2.
    const auto w = kp_spectrum(Potential::zero(pi), 2.0, -1.0, 10.0);
    const double ref[][2] = {{0.40745531059157202, 1.0}, {1.9481846230262247, 4.0}, {5.1289260685645184, 9.0}};
    REQUIRE(w.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(w[i].lo - ref[i][0]) < 1e-8);
        CHECK(std::abs(w[i].hi - ref[i][1]) < 1e-8);
    }
    auto f = [](double z) { return oracle::free_eta(z, pi, 2.0, 0.0); };
    const auto scan = oracle::level_set(f, 2.0, -1.0, 10.0, 3000);
    REQUIRE(scan.size() == 3);
    CHECK(std::abs(scan[1].first - w[1].lo) < 1e-9);
}

TEST_CASE("free line has no gaps")
{
    const auto w = kp_spectrum(Potential::zero(pi), 0.0, -1.0, 20.0);
    REQUIRE(!w.empty());
    CHECK(std::abs(w.front().lo) < 1e-10);
    for (std::size_t i = 1; i < w.size(); ++i)
        CHECK(w[i].lo == w[i - 1].hi);
}

TEST_CASE("range inside a gap is empty")
{
    CHECK(kp_spectrum(Potential::zero(pi), 2.0, 1.2, 1.8).empty());
}
