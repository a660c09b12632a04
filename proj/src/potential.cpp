#include "qgraph/potential.hpp"

#include "qgraph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qgraph {

namespace {

void require_length(double length)
{
    if (!(length > 0.0) || !std::isfinite(length))
        throw ValidationError("potential: l must be a positive finite number");
}

void require_finite(std::span<const double> values, const char* field)
{
    for (double v : values)
        if (!std::isfinite(v))
            throw ValidationError(std::string("potential: ") + field + " contains a non-finite value");
}

void require_increasing(std::span<const double> xs, const char* field)
{
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw ValidationError(std::string("potential: ") + field + " must be strictly increasing");
}

} // namespace

std::string to_string(PotentialKind kind)
{
    switch (kind) {
    case PotentialKind::zero: return "zero";
    case PotentialKind::constant: return "constant";
    case PotentialKind::piecewise_constant: return "piecewise_constant";
    case PotentialKind::sampled: return "sampled";
    }
    return "unknown";
}

Potential::Potential(PotentialKind kind, double length, std::vector<PotentialSegment> segments)
    : kind_(kind), length_(length), segments_(std::move(segments))
{
}

Potential Potential::zero(double length)
{
    require_length(length);
    return Potential(PotentialKind::zero, length, {{0.0, length, 0.0, 0.0, 0.0}});
}

Potential Potential::constant(double length, double c)
{
    require_length(length);
    if (!std::isfinite(c))
        throw ValidationError("potential: constant value c must be finite");
    return Potential(PotentialKind::constant, length, {{0.0, length, c, c, 0.0}});
}

Potential Potential::piecewise_constant(std::vector<double> breakpoints, std::vector<double> values)
{
    if (breakpoints.size() < 2)
        throw ValidationError("potential: breakpoints needs at least two entries");
    if (values.size() + 1 != breakpoints.size())
        throw ValidationError("potential: piecewise_constant needs exactly one value per piece "
                              "(len(values) == len(breakpoints) - 1)");
    require_finite(breakpoints, "breakpoints");
    require_finite(values, "values");
    require_increasing(breakpoints, "breakpoints");
    if (breakpoints.front() != 0.0)
        throw ValidationError("potential: first breakpoint must be 0");
    const double length = breakpoints.back();
    require_length(length);

    std::vector<PotentialSegment> segs;
    segs.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        segs.push_back({breakpoints[i], breakpoints[i + 1], values[i], values[i], 0.0});
    return Potential(PotentialKind::piecewise_constant, length, std::move(segs));
}

Potential Potential::sampled(std::vector<double> grid, std::vector<double> values)
{
    if (grid.size() < 2)
        throw ValidationError("potential: sampled grid needs at least two nodes");
    if (grid.size() != values.size())
        throw ValidationError("potential: sampled grid and values must have equal length");
    require_finite(grid, "grid");
    require_finite(values, "values");
    require_increasing(grid, "grid");
    if (grid.front() != 0.0)
        throw ValidationError("potential: sampled grid must start at 0");
    const double length = grid.back();
    require_length(length);

    std::vector<PotentialSegment> segs;
    segs.reserve(grid.size() - 1);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double slope = (values[i + 1] - values[i]) / (grid[i + 1] - grid[i]);
        segs.push_back({grid[i], grid[i + 1], values[i], values[i + 1], slope});
    }
    return Potential(PotentialKind::sampled, length, std::move(segs));
}

double Potential::operator()(double t) const
{
    if (!(t >= 0.0 && t <= length_))
        throw DomainError("evaluate_potential: t outside [0, l]");
    // First segment whose right end is strictly beyond t; t == l falls in the last.
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double x, const PotentialSegment& s) { return x < s.t1; });
    if (it == segments_.end())
        --it;
    return it->value(t);
}

double Potential::integral() const
{
    double sum = 0.0;
    for (const auto& s : segments_) {
        const double h = s.t1 - s.t0;
        sum += h * (s.v0 + 0.5 * s.slope * h);
    }
    return sum;
}

double Potential::mean() const { return integral() / length_; }

double Potential::min() const
{
    double m = segments_.front().v0;
    for (const auto& s : segments_)
        m = std::min({m, s.v0, s.v1});
    return m;
}

double Potential::max() const
{
    double m = segments_.front().v0;
    for (const auto& s : segments_)
        m = std::max({m, s.v0, s.v1});
    return m;
}

std::string Potential::descriptor() const
{
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
    case PotentialKind::zero: os << "zero"; break;
    case PotentialKind::constant: os << "constant(" << segments_.front().v0 << ")"; break;
    case PotentialKind::piecewise_constant: os << "piecewise_constant(" << segments_.size() << " pieces)"; break;
    case PotentialKind::sampled: os << "sampled(" << segments_.size() + 1 << " nodes)"; break;
    }
    return os.str();
}

nlohmann::ordered_json Potential::to_json() const
{
    nlohmann::ordered_json j;
    j["kind"] = to_string(kind_);
    j["l"] = length_;
    switch (kind_) {
    case PotentialKind::zero: break;
    case PotentialKind::constant: j["c"] = segments_.front().v0; break;
    case PotentialKind::piecewise_constant: {
        std::vector<double> bp{0.0}, vals;
        for (const auto& s : segments_) {
            bp.push_back(s.t1);
            vals.push_back(s.v0);
        }
        j["breakpoints"] = bp;
        j["values"] = vals;
        break;
    }
    case PotentialKind::sampled: {
        std::vector<double> grid{0.0}, vals{segments_.front().v0};
        for (const auto& s : segments_) {
            grid.push_back(s.t1);
            vals.push_back(s.v1);
        }
        j["grid"] = grid;
        j["values"] = vals;
        break;
    }
    }
    return j;
}

namespace {

double number_field(const nlohmann::json& obj, const char* key, const char* where)
{
    if (!obj.contains(key))
        throw ParseError(std::string(where) + ": missing field '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number())
        throw ParseError(std::string(where) + ": field '" + key + "' must be a number");
    return v.get<double>();
}

std::vector<double> number_array(const nlohmann::json& obj, const char* key, const char* where)
{
    if (!obj.contains(key))
        throw ParseError(std::string(where) + ": missing field '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_array())
        throw ParseError(std::string(where) + ": field '" + key + "' must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!x.is_number())
            throw ParseError(std::string(where) + ": field '" + key + "' must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

} // namespace

Potential make_potential(const nlohmann::json& spec, double length)
{
    if (!spec.is_object())
        throw ParseError("potential: must be an object");
    if (!spec.contains("kind") || !spec.at("kind").is_string())
        throw ParseError("potential: field 'kind' must be a string");
    if (spec.contains("l")) {
        const double inner = number_field(spec, "l", "potential");
        if (inner != length)
            throw ValidationError("potential: field 'l' disagrees with the top-level l");
    }
    require_length(length);

    const auto kind = spec.at("kind").get<std::string>();
    if (kind == "zero")
        return Potential::zero(length);
    if (kind == "constant")
        return Potential::constant(length, number_field(spec, "c", "potential"));
    if (kind == "piecewise_constant") {
        auto bp = number_array(spec, "breakpoints", "potential");
        auto vals = number_array(spec, "values", "potential");
        if (!bp.empty() && bp.back() != length)
            throw ValidationError("potential: last breakpoint must equal l");
        return Potential::piecewise_constant(std::move(bp), std::move(vals));
    }
    if (kind == "sampled") {
        auto grid = number_array(spec, "grid", "potential");
        auto vals = number_array(spec, "values", "potential");
        if (!grid.empty() && grid.back() != length)
            throw ValidationError("potential: sampled grid must end at l");
        return Potential::sampled(std::move(grid), std::move(vals));
    }
    throw ParseError("potential: unknown kind '" + kind + "'");
}

FieldSample::FieldSample(std::vector<double> grid_x, std::vector<double> grid_y, std::vector<double> values)
    : grid_x_(std::move(grid_x)), grid_y_(std::move(grid_y)), values_(std::move(values))
{
    if (grid_x_.size() < 2 || grid_y_.size() < 2)
        throw ValidationError("field: grid must be at least 2x2");
    if (values_.size() != grid_x_.size() * grid_y_.size())
        throw ValidationError("field: values must have len(grid_x) * len(grid_y) entries");
    require_finite(grid_x_, "field grid_x");
    require_finite(grid_y_, "field grid_y");
    require_finite(values_, "field values");
    require_increasing(grid_x_, "field grid_x");
    require_increasing(grid_y_, "field grid_y");
    for (const auto* g : {&grid_x_, &grid_y_}) {
        const double h = ((*g).back() - (*g).front()) / static_cast<double>(g->size() - 1);
        for (std::size_t i = 1; i < g->size(); ++i)
            if (std::abs(((*g)[i] - (*g)[i - 1]) - h) > 1e-9 * std::abs(h))
                throw ValidationError("field: grid must be uniform");
    }
}

FieldSample make_field(const nlohmann::json& spec)
{
    if (!spec.is_object())
        throw ParseError("field: must be an object");
    auto gx = number_array(spec, "grid_x", "field");
    auto gy = number_array(spec, "grid_y", "field");
    if (!spec.contains("values") || !spec.at("values").is_array())
        throw ParseError("field: field 'values' must be an array");
    std::vector<double> vals;
    for (const auto& x : spec.at("values")) {
        if (x.is_array()) { // nested rows, one per grid_y entry
            for (const auto& y : x) {
                if (!y.is_number())
                    throw ParseError("field: field 'values' must contain numbers");
                vals.push_back(y.get<double>());
            }
        } else if (x.is_number()) {
            vals.push_back(x.get<double>());
        } else {
            throw ParseError("field: field 'values' must contain numbers");
        }
    }
    return FieldSample(std::move(gx), std::move(gy), std::move(vals));
}

double flux_from_field(const FieldSample& field, double length)
{
    require_length(length);
    const auto gx = field.grid_x();
    const auto gy = field.grid_y();
    const double tol = 1e-9 * length;
    if (std::abs(gx.front()) > tol || std::abs(gy.front()) > tol || std::abs(gx.back() - length) > tol ||
        std::abs(gy.back() - length) > tol)
        throw ValidationError("field: grid must span the cell [0, l] x [0, l]");

    const std::size_t nx = gx.size(), ny = gy.size();
    const double hx = (gx.back() - gx.front()) / static_cast<double>(nx - 1);
    const double hy = (gy.back() - gy.front()) / static_cast<double>(ny - 1);
    double sum = 0.0;
    for (std::size_t iy = 0; iy < ny; ++iy) {
        const double wy = (iy == 0 || iy == ny - 1) ? 0.5 : 1.0;
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double wx = (ix == 0 || ix == nx - 1) ? 0.5 : 1.0;
            sum += wx * wy * field.at(ix, iy);
        }
    }
    const double integral = sum * hx * hy;
    // xi = integral / (2 pi l^2), theta = xi * l^2
    const double xi = integral / (2.0 * std::numbers::pi * length * length);
    return xi * length * length;
}

} // namespace qgraph
