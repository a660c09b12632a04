#pragma once

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

namespace qgraph {

enum class PotentialKind { zero, constant, piecewise_constant, sampled };

std::string to_string(PotentialKind kind);

/// One affine piece V(t) = v0 + slope * (t - t0) on [t0, t1]; v1 is the
/// exact value at t1 as given by the defining data.
struct PotentialSegment {
    double t0;
    double t1;
    double v0;
    double v1;
    double slope;

    double value(double t) const { return t == t1 ? v1 : v0 + slope * (t - t0); }
};

/// Edge potential V on [0, l]. Immutable once built.
///
/// Piecewise-constant potentials are right-continuous at interior
/// breakpoints; sampled potentials interpolate linearly between nodes.
/// Internally every kind is a list of affine segments, which the ODE
/// integrators step through without crossing a kink or jump.
class Potential {
public:
    static Potential zero(double length);
    static Potential constant(double length, double c);
    static Potential piecewise_constant(std::vector<double> breakpoints, std::vector<double> values);
    static Potential sampled(std::vector<double> grid, std::vector<double> values);

    /// Samples f on n uniform nodes of [0, length] (test and config helper).
    template <typename F>
    static Potential sample_function(double length, int nodes, F&& f)
    {
        std::vector<double> grid(static_cast<std::size_t>(nodes));
        std::vector<double> values(grid.size());
        for (int i = 0; i < nodes; ++i) {
            grid[i] = (i == nodes - 1) ? length : length * i / (nodes - 1);
            values[i] = f(grid[i]);
        }
        return sampled(std::move(grid), std::move(values));
    }

    double length() const { return length_; }
    PotentialKind kind() const { return kind_; }

    /// V(t); throws DomainError outside [0, l].
    double operator()(double t) const;

    double mean() const;    // (1/l) * integral of V
    double integral() const;
    double min() const;
    double max() const;

    std::span<const PotentialSegment> segments() const { return segments_; }

    /// Short human-readable descriptor, e.g. "piecewise_constant(2 pieces)".
    std::string descriptor() const;
    nlohmann::ordered_json to_json() const;

private:
    Potential(PotentialKind kind, double length, std::vector<PotentialSegment> segments);

    PotentialKind kind_;
    double length_;
    std::vector<PotentialSegment> segments_;
};

/// Parses the `potential` object of a config document. `length` is the
/// top-level `l`; a `l` key inside the object must agree with it.
Potential make_potential(const nlohmann::json& spec, double length);

/// Magnetic field sampled on a uniform tensor grid of the cell [0,l]x[0,l].
/// values are row-major: values[iy * nx + ix] = b(grid_x[ix], grid_y[iy]).
class FieldSample {
public:
    FieldSample(std::vector<double> grid_x, std::vector<double> grid_y, std::vector<double> values);

    std::span<const double> grid_x() const { return grid_x_; }
    std::span<const double> grid_y() const { return grid_y_; }
    double at(std::size_t ix, std::size_t iy) const { return values_[iy * grid_x_.size() + ix]; }

    template <typename F>
    static FieldSample sample_function(double length, int n, F&& b)
    {
        std::vector<double> g(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            g[i] = (i == n - 1) ? length : length * i / (n - 1);
        std::vector<double> v;
        v.reserve(g.size() * g.size());
        for (double y : g)
            for (double x : g)
                v.push_back(b(x, y));
        return FieldSample(g, g, std::move(v));
    }

private:
    std::vector<double> grid_x_;
    std::vector<double> grid_y_;
    std::vector<double> values_;
};

FieldSample make_field(const nlohmann::json& spec);

/// Flux quanta per plaquette, theta = (1/2pi) * integral of b over the cell,
/// by the composite trapezoid rule. The grid must span [0, l] in both axes.
double flux_from_field(const FieldSample& field, double length);

} // namespace qgraph
