#include "qgraph/config.hpp"

#include "qgraph/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace qgraph {

namespace {

double number(const nlohmann::json& doc, const char* key)
{
    const auto& v = doc.at(key);
    if (!v.is_number())
        throw ParseError(std::string("config: field '") + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x))
        throw ValidationError(std::string("config: field '") + key + "' must be finite");
    return x;
}

long long integer(const nlohmann::json& doc, const char* key)
{
    const auto& v = doc.at(key);
    if (!v.is_number_integer())
        throw ParseError(std::string("config: field '") + key + "' must be an integer");
    return v.get<long long>();
}

std::string format_theta(double theta)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, theta);
    return std::string(buf, ptr);
}

} // namespace

OutputFormat parse_format(const std::string& text)
{
    if (text == "json")
        return OutputFormat::json;
    if (text == "csv")
        return OutputFormat::csv;
    throw ValidationError("config: format must be 'json' or 'csv', got '" + text + "'");
}

double RunConfig::upper() const
{
    if (z_max)
        return *z_max;
    const double w = (k_max + 1.5) * std::numbers::pi / length;
    return w * w + potential.max();
}

RunConfig parse_run_config(const nlohmann::json& doc)
{
    if (!doc.is_object())
        throw ParseError("config: top level must be an object");
    static const std::set<std::string> known{"l",     "potential", "alpha", "beta", "theta",  "field",
                                             "q_max", "z_min",     "z_max", "k_max", "format", "out"};
    for (const auto& [key, _] : doc.items())
        if (!known.contains(key))
            throw ParseError("config: unknown field '" + key + "'");

    RunConfig rc;
    if (!doc.contains("l"))
        throw ParseError("config: field 'l' is required");
    rc.length = number(doc, "l");
    if (!(rc.length > 0.0))
        throw ValidationError("config: field 'l' must be positive");
    if (!doc.contains("potential"))
        throw ParseError("config: field 'potential' is required");
    rc.potential = make_potential(doc.at("potential"), rc.length);

    if (doc.contains("alpha"))
        rc.alpha = number(doc, "alpha");
    if (doc.contains("beta"))
        rc.beta = number(doc, "beta");
    if (!(rc.beta > 0.0))
        throw ValidationError("config: field 'beta' must be positive");

    if (doc.contains("q_max"))
        rc.q_max = integer(doc, "q_max");
    if (rc.q_max < 1)
        throw ValidationError("config: field 'q_max' must be >= 1");

    if (doc.contains("theta") && doc.contains("field"))
        throw ValidationError("config: give either 'theta' or 'field', not both");
    if (doc.contains("theta")) {
        const auto& t = doc.at("theta");
        if (t.is_string())
            rc.theta = t.get<std::string>();
        else if (t.is_number() && std::isfinite(t.get<double>()))
            rc.theta = t.is_number_integer() ? std::to_string(t.get<long long>()) : format_theta(t.get<double>());
        else
            throw ParseError("config: field 'theta' must be a number or a \"p/q\" string");
    } else if (doc.contains("field")) {
        rc.theta = format_theta(flux_from_field(make_field(doc.at("field")), rc.length));
        rc.theta_from_field = true;
    }
    // Fail early on a malformed flux.
    (void)resolve_flux(rc.theta, rc.q_max);

    if (doc.contains("z_min"))
        rc.z_min = number(doc, "z_min");
    if (doc.contains("z_max"))
        rc.z_max = number(doc, "z_max");
    if (doc.contains("k_max"))
        rc.k_max = static_cast<int>(integer(doc, "k_max"));
    if (rc.k_max < 0)
        throw ValidationError("config: field 'k_max' must be >= 0");
    if (rc.z_min && rc.z_max && !(*rc.z_min < *rc.z_max))
        throw ValidationError("config: z_min must be below z_max");

    if (doc.contains("format")) {
        if (!doc.at("format").is_string())
            throw ParseError("config: field 'format' must be a string");
        rc.format = parse_format(doc.at("format").get<std::string>());
    }
    if (doc.contains("out")) {
        if (!doc.at("out").is_string())
            throw ParseError("config: field 'out' must be a string");
        rc.out = doc.at("out").get<std::string>();
    }
    return rc;
}

RunConfig load_run_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("config: cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    return parse_run_config(doc);
}

} // namespace qgraph
