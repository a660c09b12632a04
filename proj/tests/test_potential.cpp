#include "qgraph/errors.hpp"
#include "qgraph/potential.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qgraph;
using nlohmann::json;
constexpr double pi = std::numbers::pi;

TEST_CASE("make_potential builds each kind")
{
    auto z = make_potential(json{{"kind", "zero"}, {"l", pi}}, pi);
    CHECK(z.kind() == PotentialKind::zero);
    CHECK(z(1.0) == 0.0);

    auto c = make_potential(json{{"kind", "constant"}, {"c", 5.0}}, pi);
    CHECK(c(0.3) == 5.0);
    CHECK(c.mean() == doctest::Approx(5.0));

    auto step = make_potential(json{{"kind", "piecewise_constant"},
                                    {"breakpoints", {0.0, pi / 2, pi}},
                                    {"values", {0.0, 10.0}}},
                               pi);
    CHECK(step(pi / 2) == 10.0); // right-continuous
    CHECK(step(pi / 2 - 1e-12) == 0.0);
    CHECK(step(pi) == 10.0);
    CHECK(step.integral() == doctest::Approx(5.0 * pi));
}

TEST_CASE("sampled potential interpolates linearly and hits its nodes exactly")
{
    std::vector<double> grid{0.0, 0.5, 1.25, 2.0};
    std::vector<double> vals{1.0, -3.0, 0.7, 4.0};
    auto p = Potential::sampled(grid, vals);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(p(grid[i]) == vals[i]);
    CHECK(p(0.25) == doctest::Approx(-1.0));
    CHECK(p.min() == -3.0);
    CHECK(p.max() == 4.0);
    // trapezoid over the nodes is exact for a piecewise-linear function
    CHECK(p.integral() == doctest::Approx(0.5 * (1 - 3) / 2 * 1 + 0.75 * (-3 + 0.7) / 2 + 0.75 * (0.7 + 4) / 2));
}

TEST_CASE("evaluation outside [0, l] is a domain error")
{
    auto p = Potential::constant(1.0, 2.0);
    CHECK_THROWS_AS(p(-1e-9), DomainError);
    CHECK_THROWS_AS(p(1.0 + 1e-9), DomainError);
}

TEST_CASE("malformed potential specs name the field")
{
    CHECK_THROWS_AS(make_potential(json{{"c", 1.0}}, 1.0), ParseError);
    CHECK_THROWS_AS(make_potential(json{{"kind", "bogus"}}, 1.0), ParseError);
    try {
        make_potential(json{{"kind", "constant"}, {"c", "five"}}, 1.0);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("'c'") != std::string::npos);
    }
    CHECK_THROWS_AS(make_potential(json{{"kind", "piecewise_constant"},
                                        {"breakpoints", {0.0, 0.6, 0.4, 1.0}},
                                        {"values", {1.0, 2.0, 3.0}}},
                                   1.0),
                    ValidationError);
    CHECK_THROWS_AS(make_potential(json{{"kind", "sampled"}, {"grid", {0.0}}, {"values", {1.0}}}, 1.0),
                    ValidationError);
    CHECK_THROWS_AS(make_potential(json{{"kind", "zero"}, {"l", 2.0}}, 1.0), ValidationError);
}

TEST_CASE("flux from a sampled field")
{
    const double l = 2.0;
    auto constant = FieldSample::sample_function(l, 11, [&](double, double) { return 2 * pi / (l * l); });
    CHECK(flux_from_field(constant, l) == doctest::Approx(1.0).epsilon(1e-14));

    auto none = FieldSample::sample_function(l, 11, [](double, double) { return 0.0; });
    CHECK(flux_from_field(none, l) == 0.0);

    auto wave = FieldSample::sample_function(l, 101, [&](double x, double) { return std::sin(2 * pi * x / l); });
    CHECK(std::abs(flux_from_field(wave, l)) < 1e-10);
}

TEST_CASE("flux is linear in the field")
{
    const double l = pi;
    auto b1 = [](double x, double y) { return std::exp(-x) * std::cos(y) + 0.3; };
    auto b2 = [](double x, double y) { return x * y - 1.0; };
    auto f1 = FieldSample::sample_function(l, 41, b1);
    auto f2 = FieldSample::sample_function(l, 41, b2);
    auto f12 = FieldSample::sample_function(l, 41, [&](double x, double y) { return b1(x, y) + b2(x, y); });
    CHECK(std::abs(flux_from_field(f12, l) - flux_from_field(f1, l) - flux_from_field(f2, l)) < 1e-12);
}

TEST_CASE("field parsing and invariants")
{
    json doc{{"grid_x", {0.0, 1.0}}, {"grid_y", {0.0, 1.0}}, {"values", {1.0, 1.0, 1.0, 1.0}}};
    CHECK(flux_from_field(make_field(doc), 1.0) == doctest::Approx(1.0 / (2 * pi)));
    json nested{{"grid_x", {0.0, 1.0}}, {"grid_y", {0.0, 1.0}}, {"values", {{1.0, 1.0}, {1.0, 1.0}}}};
    CHECK(flux_from_field(make_field(nested), 1.0) == doctest::Approx(1.0 / (2 * pi)));
    CHECK_THROWS_AS(FieldSample({0.0}, {0.0, 1.0}, {1.0, 2.0}), ValidationError);
    CHECK_THROWS_AS(FieldSample({0.0, 0.2, 1.0}, {0.0, 1.0}, std::vector<double>(6, 1.0)), ValidationError);
    CHECK_THROWS_AS(FieldSample({0.0, 1.0}, {0.0, 1.0}, {1.0, NAN, 1.0, 1.0}), ValidationError);
}
