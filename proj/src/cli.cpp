#include "qgraph/cli.hpp"

#include "qgraph/assembler.hpp"
#include "qgraph/config.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/report.hpp"
#include "qgraph/validation.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>

namespace qgraph {

namespace {

struct Flags {
    std::string config;
    std::string out;
    std::string format;
    int jobs = 0;
    long long q_max = 0;
    bool stamp = false;
};

std::string utc_stamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Command {
public:
    Command(const Flags& f, std::ostream& out) : flags_(f), out_(out)
    {
        rc_ = load_run_config(f.config);
        if (!f.format.empty())
            rc_.format = parse_format(f.format);
        if (!f.out.empty())
            rc_.out = f.out;
        if (f.q_max != 0) {
            if (f.q_max < 1)
                throw ValidationError("--q-max must be >= 1");
            rc_.q_max = f.q_max;
        }
        if (f.jobs < 0)
            throw ValidationError("--jobs must be >= 0");
        exec_ = Exec::openmp(f.jobs);
        if (f.stamp)
            report_.stamp = utc_stamp();
    }

    const RunConfig& config() const { return rc_; }
    const Exec& exec() const { return exec_; }
    const ReportOptions& report() const { return report_; }

    void emit(const std::string& text) const
    {
        if (rc_.out.empty()) {
            out_ << text;
            return;
        }
        std::ofstream file(rc_.out, std::ios::binary);
        if (!file)
            throw ParseError("cannot open output file '" + rc_.out + "'");
        file << text;
    }
    void emit(const nlohmann::ordered_json& doc) const { emit(doc.dump(2) + "\n"); }

private:
    Flags flags_;
    std::ostream& out_;
    RunConfig rc_;
    Exec exec_;
    ReportOptions report_;
};

int cmd_spectrum(const Command& cmd)
{
    const auto& rc = cmd.config();
    const auto s = graph_spectrum(rc.coupling(), rc.flux(), rc.z_min, rc.upper(), cmd.exec());
    if (rc.format == OutputFormat::csv)
        cmd.emit(spectrum_csv(s));
    else
        cmd.emit(spectrum_json(s, cmd.report()));
    return exit_ok;
}

int cmd_butterfly(const Command& cmd, std::ostream& err)
{
    const auto& rc = cmd.config();
    const auto table = butterfly_sweep(rc.coupling(), rc.q_max, rc.z_min, rc.upper(), cmd.exec());
    if (rc.format == OutputFormat::json)
        cmd.emit(butterfly_json(table, cmd.report()));
    else
        cmd.emit(butterfly_csv(table));
    int status = exit_ok;
    for (const auto& row : table.rows)
        if (!row.error.empty()) {
            err << "qgraph: theta = " << row.flux.str() << ": " << row.error << "\n";
            status = exit_numerical;
        }
    return status;
}

int cmd_dirichlet(const Command& cmd)
{
    const auto& rc = cmd.config();
    const auto mu = dirichlet_eigenvalues(rc.potential, rc.k_max);
    if (rc.format == OutputFormat::csv)
        cmd.emit(dirichlet_csv(mu));
    else
        cmd.emit(dirichlet_json(mu, rc.length));
    return exit_ok;
}

int cmd_harper(const Command& cmd)
{
    const auto& rc = cmd.config();
    const auto h = harper_spectrum(rc.flux().flux, rc.beta);
    if (rc.format == OutputFormat::csv)
        cmd.emit(harper_csv(h));
    else
        cmd.emit(harper_json(h));
    return exit_ok;
}

int cmd_validate(const Command& cmd)
{
    const auto report = validate_config(cmd.config(), cmd.exec());
    std::ostringstream os;
    os.precision(3);
    for (const auto& c : report.checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.name << " defect=" << std::scientific << c.defect
           << " tol=" << c.tolerance << std::defaultfloat;
        if (!c.detail.empty())
            os << " (" << c.detail << ")";
        os << "\n";
    }
    cmd.emit(os.str());
    return report.passed() ? exit_ok : exit_check_failed;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spectrum of the magnetic square quantum-graph lattice", "qgraph"};
    app.require_subcommand(1);
    Flags flags;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", flags.config, "JSON run configuration")->required();
        sub->add_option("--out", flags.out, "output file (default: stdout)");
        sub->add_option("--format", flags.format, "json or csv");
        sub->add_option("--jobs", flags.jobs, "worker threads (0: all)");
        sub->add_option("--q-max", flags.q_max, "largest denominator for flux resolution and sweeps");
        sub->add_flag("--stamp", flags.stamp, "record a UTC timestamp in the metadata");
    };
    auto* spectrum = app.add_subcommand("spectrum", "assembled spectrum as JSON");
    auto* butterfly = app.add_subcommand("butterfly", "sweep over p/q with q <= q_max, CSV by default");
    auto* dirichlet = app.add_subcommand("dirichlet", "Dirichlet eigenvalues mu_0..mu_k_max");
    auto* harper = app.add_subcommand("harper", "Harper bands for the configured flux");
    auto* validate = app.add_subcommand("validate", "run the invariant suite");
    for (auto* sub : {spectrum, butterfly, dirichlet, harper, validate})
        add_common(sub);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "qgraph: " << e.what() << "\n";
        return exit_invalid_input;
    }

    try {
        if (butterfly->parsed() && flags.format.empty())
            flags.format = "csv";
        const Command cmd(flags, out);
        if (spectrum->parsed())
            return cmd_spectrum(cmd);
        if (butterfly->parsed())
            return cmd_butterfly(cmd, err);
        if (dirichlet->parsed())
            return cmd_dirichlet(cmd);
        if (harper->parsed())
            return cmd_harper(cmd);
        return cmd_validate(cmd);
    } catch (const ParseError& e) {
        err << "qgraph: invalid config: " << e.what() << "\n";
        return exit_invalid_input;
    } catch (const ValidationError& e) {
        err << "qgraph: invalid config: " << e.what() << "\n";
        return exit_invalid_input;
    } catch (const NumericalSearchError& e) {
        err << "qgraph: numerical failure: " << e.what() << " [window " << e.window_lo << ", " << e.window_hi
            << "]\n";
        return exit_numerical;
    } catch (const PoleProximityError& e) {
        err << "qgraph: numerical failure: " << e.what() << " [nearest mu " << e.nearest_mu << "]\n";
        return exit_numerical;
    } catch (const Error& e) {
        err << "qgraph: numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
}

} // namespace qgraph
