#include "qgraph/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qgraph;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string config(const std::string& name) { return std::string(QGRAPH_CONFIG_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path.string();
}

} // namespace

TEST_CASE("spectrum of the free lattice")
{
    const auto r = run({"spectrum", "--config", config("free.json")});
    REQUIRE(r.code == exit_ok);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["gaps"].empty());
    REQUIRE(doc["point_spectrum"].size() == 3);
    for (const auto& e : doc["point_spectrum"]) {
        const auto c = e["classification"].get<std::string>();
        CHECK((c == "BandEdge" || c == "Embedded"));
    }
    CHECK(doc["metadata"]["convergent_used"].is_null());
    CHECK(doc["metadata"].contains("scan_floor_heuristic"));
    CHECK_FALSE(doc["metadata"].contains("stamp"));
}

TEST_CASE("spectrum at half flux")
{
    const auto r = run({"spectrum", "--config", config("half_flux.json")});
    REQUIRE(r.code == exit_ok);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["point_spectrum"].size() >= 1);
    CHECK(doc["point_spectrum"][0]["classification"] == "Isolated");
    const auto& cont = doc["continuous"];
    REQUIRE(cont.size() == 4);
    CHECK(std::abs(cont[0]["z_lo"].get<double>() - 1.0 / 16) < 1e-8);
    CHECK(std::abs(cont[1]["z_hi"].get<double>() - 9.0 / 16) < 1e-8);
    CHECK(std::abs(cont[2]["z_lo"].get<double>() - 25.0 / 16) < 1e-8);
    CHECK(std::abs(cont[3]["z_hi"].get<double>() - 49.0 / 16) < 1e-8);
    for (const auto& key : {"z_lo", "z_hi", "window", "band", "truncated"})
        CHECK(cont[0].contains(key));
}

TEST_CASE("output is byte-identical across runs and job counts")
{
    const auto a = run({"spectrum", "--config", config("mathieu.json"), "--jobs", "1"});
    const auto b = run({"spectrum", "--config", config("mathieu.json"), "--jobs", "3"});
    REQUIRE(a.code == exit_ok);
    CHECK(a.out == b.out);
    const auto c = run({"butterfly", "--config", config("free.json"), "--q-max", "4", "--jobs", "2"});
    const auto d = run({"butterfly", "--config", config("free.json"), "--q-max", "4", "--jobs", "1"});
    CHECK(c.out == d.out);
}

TEST_CASE("butterfly CSV")
{
    const auto r = run({"butterfly", "--config", config("free.json"), "--q-max", "5"});
    REQUIRE(r.code == exit_ok);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "theta_num,theta_den,band_index,z_lo,z_hi,truncated");
    std::vector<std::pair<long long, long long>> thetas;
    while (std::getline(in, line)) {
        long long p = 0, q = 0;
        REQUIRE(std::sscanf(line.c_str(), "%lld,%lld", &p, &q) == 2);
        if (thetas.empty() || thetas.back() != std::pair{p, q})
            thetas.emplace_back(p, q);
    }
    CHECK(thetas.size() == 11);
    CHECK(r.out.find('\r') == std::string::npos);
    CHECK(thetas.front() == std::pair<long long, long long>{0, 1});
    CHECK(thetas[1] == std::pair<long long, long long>{1, 1});

    const auto one = run({"butterfly", "--config", config("free.json"), "--q-max", "1"});
    CHECK(one.out.find("\n0,1,") != std::string::npos);
    CHECK(one.out.find("\n1,1,") != std::string::npos);
}

TEST_CASE("half-flux row has a gap around mu_0")
{
    const auto r = run({"butterfly", "--config", config("half_flux.json"), "--q-max", "2", "--format", "json"});
    REQUIRE(r.code == exit_ok);
    const auto doc = nlohmann::json::parse(r.out);
    const auto& row = doc["rows"][2];
    CHECK(row["theta_den"] == 2);
    for (const auto& i : row["continuous"])
        CHECK((i["z_hi"].get<double>() < 1.0 || i["z_lo"].get<double>() > 1.0));
}

TEST_CASE("invalid input exits with 2")
{
    CHECK(run({"spectrum", "--config", config("bad_theta.json")}).code == exit_invalid_input);
    CHECK(run({"validate", "--config", config("negative_beta.json")}).code == exit_invalid_input);
    CHECK(run({"spectrum", "--config", "/nonexistent.json"}).code == exit_invalid_input);
    CHECK(run({"spectrum"}).code == exit_invalid_input);
    CHECK(run({"frobnicate", "--config", config("free.json")}).code == exit_invalid_input);
    CHECK(run({"spectrum", "--config", config("free.json"), "--format", "xml"}).code == exit_invalid_input);
    const auto both = write_temp("qgraph_both.json",
                                 R"({"l": 1, "potential": {"kind": "zero"}, "theta": 0,
                                     "field": {"grid_x": [0, 1], "grid_y": [0, 1], "values": [0, 0, 0, 0]}})");
    CHECK(run({"spectrum", "--config", both}).code == exit_invalid_input);
    const auto typo = write_temp("qgraph_typo.json", R"({"l": 1, "potential": {"kind": "zero"}, "alpah": 1})");
    const auto r = run({"spectrum", "--config", typo});
    CHECK(r.code == exit_invalid_input);
    CHECK(r.err.find("alpah") != std::string::npos);
}

TEST_CASE("numerical failure exits with 3")
{
    // The lowest window cannot be bracketed from a floor this deep.
    const auto deep = write_temp("qgraph_deep.json",
                                 R"({"l": 3.14159, "potential": {"kind": "zero"}, "z_min": -2e7, "z_max": 5})");
    const auto r = run({"spectrum", "--config", deep});
    CHECK(r.code == exit_numerical);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("irrational flux records the convergent")
{
    const auto r = run({"spectrum", "--config", config("step.json")});
    REQUIRE(r.code == exit_ok);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["metadata"]["convergent_used"] == "12/29");
    CHECK(doc["parameters"]["theta"] == "0.4142");
}

TEST_CASE("flux from a field")
{
    const auto r = run({"harper", "--config", config("field.json")});
    REQUIRE(r.code == exit_ok);
    CHECK(nlohmann::json::parse(r.out)["flux"] == "1/3");
}

TEST_CASE("dirichlet and harper subcommands")
{
    const auto d = run({"dirichlet", "--config", config("free.json"), "--format", "csv"});
    REQUIRE(d.code == exit_ok);
    CHECK(d.out.rfind("k,mu\n0,", 0) == 0);
    const auto h = run({"harper", "--config", config("half_flux.json")});
    REQUIRE(h.code == exit_ok);
    CHECK(nlohmann::json::parse(h.out)["bands"].size() == 2);
}

TEST_CASE("validate passes on the bundled configs")
{
    for (const auto* name : {"free.json", "mathieu.json"}) {
        const auto r = run({"validate", "--config", config(name)});
        CHECK_MESSAGE(r.code == exit_ok, r.out);
        CHECK(r.out.find("FAIL") == std::string::npos);
        CHECK(r.out.find("PASS chambers") != std::string::npos);
    }
}

TEST_CASE("--out and --stamp")
{
    const auto path = (std::filesystem::temp_directory_path() / "qgraph_out.json").string();
    REQUIRE(run({"spectrum", "--config", config("free.json"), "--out", path, "--stamp"}).code == exit_ok);
    std::ifstream in(path);
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc["metadata"].contains("stamp"));
}
