// Command dispatch and serialization.
//
// Output is formatted by hand rather than through a JSON library so the
// digit counts stay pinned: 17 significant digits in JSON (full double
// round-trip), 12 in CSV. Identical configs must produce byte-identical
// output. The config file, in contrast, is parsed with a real JSON parser.

#include "exechyper/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "exechyper/errors.hpp"
#include "exechyper/solver.hpp"
#include "exechyper/verify.hpp"

namespace exechyper::cli {

namespace {

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
    const char* raw = std::getenv("EXEC_HYPER_LOG");
    if (raw == nullptr) return LogLevel::Quiet;
    const std::string v{raw};
    if (v == "debug") return LogLevel::Debug;
    if (v == "info") return LogLevel::Info;
    return LogLevel::Quiet;
}

std::string fmt(double x, int sig_digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", sig_digits, x);
    return buf;
}

std::string fmt_json(double x) { return fmt(x, 17); }
std::string fmt_csv(double x) { return fmt(x, 12); }

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    return out;
}

void emit_params(std::ostream& out, const model::ModelParams& p, const std::string& indent) {
    out << indent << "\"params\": {"
        << "\"gamma\": " << fmt_json(p.gamma) << ", \"eta\": " << fmt_json(p.eta)
        << ", \"lambda\": " << fmt_json(p.lam) << ", \"sigma\": " << fmt_json(p.sigma)
        << ", \"k\": " << fmt_json(p.k) << ", \"X\": " << fmt_json(p.X)
        << ", \"T\": " << fmt_json(p.T) << "}";
}

void emit_report_json(std::ostream& out, const solver::SolveReport& rep) {
    out << "{\n";
    emit_params(out, rep.params, "  ");
    out << ",\n";
    out << "  \"v0\": " << fmt_json(rep.shooting.v0) << ",\n";
    out << "  \"residual\": " << fmt_json(rep.shooting.residual) << ",\n";
    out << "  \"iterations\": " << rep.shooting.iterations << ",\n";
    out << "  \"cost\": " << fmt_json(rep.cost) << ",\n";
    out << "  \"checks\": {";
    bool first = true;
    for (const auto& [name, value] : rep.checks) {  // std::map iterates sorted
        if (!first) out << ", ";
        out << "\"" << name << "\": " << fmt_json(value);
        first = false;
    }
    out << "},\n";
    out << "  \"trajectory\": [\n";
    for (std::size_t i = 0; i < rep.trajectory.points.size(); ++i) {
        const auto& pt = rep.trajectory.points[i];
        out << "    {\"t\": " << fmt_json(pt.t) << ", \"x\": " << fmt_json(pt.x)
            << ", \"v\": " << fmt_json(pt.v)
            << ", \"beltrami_residual\": " << fmt_json(pt.beltrami_residual) << "}"
            << (i + 1 < rep.trajectory.points.size() ? ",\n" : "\n");
    }
    out << "  ]\n";
    out << "}\n";
}

void emit_trajectory_csv(std::ostream& out, const model::Trajectory& traj) {
    out << "t,x,v,beltrami_residual\n";
    for (const auto& pt : traj.points) {
        out << fmt_csv(pt.t) << ',' << fmt_csv(pt.x) << ',' << fmt_csv(pt.v) << ','
            << fmt_csv(pt.beltrami_residual) << '\n';
    }
}

struct MappedError {
    std::string kind;
    std::string message;
    int exit_code;
};

MappedError map_error(const std::exception& e) {
    if (dynamic_cast<const NoRootError*>(&e)) return {"no-root", e.what(), kExitComputeError};
    if (dynamic_cast<const NoConvergenceError*>(&e))
        return {"no-convergence", e.what(), kExitComputeError};
    if (dynamic_cast<const BracketFailureError*>(&e))
        return {"bracket-failure", e.what(), kExitComputeError};
    if (dynamic_cast<const InversionFailureError*>(&e))
        return {"inversion-failure", e.what(), kExitComputeError};
    if (dynamic_cast<const StepFailureError*>(&e))
        return {"step-failure", e.what(), kExitComputeError};
    if (dynamic_cast<const InsufficientSamplesError*>(&e))
        return {"insufficient-samples", e.what(), kExitUsageError};
    if (dynamic_cast<const std::invalid_argument*>(&e) ||
        dynamic_cast<const std::domain_error*>(&e))
        return {"validation", e.what(), kExitUsageError};
    return {"internal", e.what(), kExitComputeError};
}

// Error reporting: a diagnostic line always goes to stderr; JSON-producing
// commands additionally emit a machine-readable error object on stdout.
int report_error(const std::exception& e, bool json_output, std::ostream& out,
                 std::ostream& err) {
    const MappedError me = map_error(e);
    err << "error (" << me.kind << "): " << me.message << "\n";
    if (json_output) {
        out << "{\"error\": {\"kind\": \"" << me.kind << "\", \"message\": \""
            << json_escape(me.message) << "\"}}\n";
    }
    return me.exit_code;
}

void log_shooting(const solver::ShootingResult& s, std::ostream& err) {
    const LogLevel lvl = log_level();
    if (lvl >= LogLevel::Info) {
        err << "shooting: v0=" << fmt_json(s.v0) << " residual=" << fmt_json(s.residual)
            << " iterations=" << s.iterations << "\n";
    }
    if (lvl >= LogLevel::Debug) {
        for (const auto& [v, lhs] : s.evals) {
            err << "  eval v0=" << fmt_json(v) << " lhs=" << fmt_json(lhs) << "\n";
        }
    }
}

}  // namespace

int run_solve(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const solver::SolveReport rep = solver::solve(cfg.params, cfg.n_samples);
        log_shooting(rep.shooting, err);
        if (cfg.format == OutputFormat::Csv) {
            emit_trajectory_csv(out, rep.trajectory);
        } else {
            emit_report_json(out, rep);
        }
        return kExitOk;
    } catch (const std::exception& e) {
        return report_error(e, cfg.format == OutputFormat::Json, out, err);
    }
}

int run_trajectory(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const solver::SolveReport rep = solver::solve(cfg.params, cfg.n_samples);
        log_shooting(rep.shooting, err);
        emit_trajectory_csv(out, rep.trajectory);
        return kExitOk;
    } catch (const std::exception& e) {
        return report_error(e, false, out, err);
    }
}

int run_sweep_k(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.k_list.empty()) {
        const std::invalid_argument e{"sweep-k requires a non-empty --k-list"};
        return report_error(e, false, out, err);
    }
    out << "k,t,x,v\n";
    bool any_failed = false;
    for (const double k : cfg.k_list) {
        model::ModelParams p = cfg.params;
        p.k = k;
        try {
            const solver::SolveReport rep = solver::solve(p, cfg.n_samples);
            log_shooting(rep.shooting, err);
            for (const auto& pt : rep.trajectory.points) {
                out << fmt_csv(k) << ',' << fmt_csv(pt.t) << ',' << fmt_csv(pt.x) << ','
                    << fmt_csv(pt.v) << '\n';
            }
        } catch (const std::exception& e) {
            const MappedError me = map_error(e);
            out << "# k=" << fmt_csv(k) << ": " << me.kind << ": " << me.message << '\n';
            err << "error (" << me.kind << ") at k=" << fmt_csv(k) << ": " << me.message
                << "\n";
            any_failed = true;
        }
    }
    return any_failed ? kExitComputeError : kExitOk;
}

int run_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const model::ModelParams& p = cfg.params;
        const solver::SolveReport rep = solver::solve(p, cfg.n_samples);
        log_shooting(rep.shooting, err);

        std::map<std::string, double> residuals = rep.checks;
        std::map<std::string, double> tolerances{
            {"beltrami_max_residual", 1e-6},
            {"boundary_x0_error", 1e-6},
            {"boundary_xT_error", 1e-9},
            {"oracle_max_deviation", 1e-5},
            {"reduction_residual", 1e-4},
            {"legendre_violation", 0.0},
        };

        residuals["oracle_max_deviation"] = verify::cross_validate(p, rep, 4096);
        const verify::OdeSolution sol = verify::integrate_first_order(p, rep.shooting.v0, 2048);
        residuals["reduction_residual"] = verify::reduction_check(p, sol);

        double legendre_min = std::numeric_limits<double>::infinity();
        for (const auto& pt : rep.trajectory.points) {
            if (pt.v > 0.0) {
                legendre_min = std::min(legendre_min, model::legendre_check(p, pt.v));
            }
        }
        residuals["legendre_violation"] = std::max(0.0, -legendre_min);

        if (std::abs(p.k - 1.0) <= 1e-12) {
            double worst = 0.0;
            for (const auto& pt : rep.trajectory.points) {
                worst = std::max(worst, std::abs(pt.x - solver::closed_form_k1(p, pt.t)));
            }
            residuals["closed_form_max_deviation"] = worst;
            tolerances["closed_form_max_deviation"] = 1e-7;
        }

        bool pass = true;
        for (const auto& [name, tol] : tolerances) {
            if (residuals.at(name) > tol) pass = false;
        }

        out << "{\n";
        emit_params(out, p, "  ");
        out << ",\n  \"v0\": " << fmt_json(rep.shooting.v0) << ",\n";
        const auto emit_map = [&](const char* key, const std::map<std::string, double>& m) {
            out << "  \"" << key << "\": {";
            bool first = true;
            for (const auto& [name, value] : m) {
                if (!first) out << ", ";
                out << "\"" << name << "\": " << fmt_json(value);
                first = false;
            }
            out << "}";
        };
        emit_map("residuals", residuals);
        out << ",\n";
        emit_map("tolerances", tolerances);
        out << ",\n  \"pass\": " << (pass ? "true" : "false") << "\n}\n";
        return pass ? kExitOk : kExitComputeError;
    } catch (const std::exception& e) {
        return report_error(e, true, out, err);
    }
}

int run_shoot_plot(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const model::ModelParams& p = cfg.params;
        p.validate();

        double center = p.X / p.T;
        bool has_root = false;
        double root = 0.0;
        double boundary = 0.0;
        try {
            const solver::ShootingResult s = solver::solve_v0(p);
            log_shooting(s, err);
            has_root = true;
            root = s.v0;
            center = s.v0;
        } catch (const NoRootError& e) {
            boundary = e.boundary_time();
        }

        // 65 log-spaced speeds spanning a factor of 8 on either side of the
        // root (or of the linear-schedule speed when there is none).
        out << "v0,lhs\n";
        constexpr int kPoints = 65;
        for (int i = 0; i < kPoints; ++i) {
            const double v = center / 8.0 *
                             std::pow(64.0, static_cast<double>(i) / (kPoints - 1));
            const double lhs = solver::shooting_lhs(p, v);
            out << fmt_csv(v) << ',' << fmt_csv(lhs) << '\n';
        }
        if (has_root) {
            out << fmt_csv(root) << ',' << fmt_csv(p.T) << '\n';
        } else {
            out << "# no-root: depletion times are bounded by " << fmt_csv(boundary)
                << "; horizon T=" << fmt_csv(p.T) << " is unreachable\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        return report_error(e, false, out, err);
    }
}

int run_command(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    switch (cfg.command) {
        case Command::Solve: return run_solve(cfg, out, err);
        case Command::Trajectory: return run_trajectory(cfg, out, err);
        case Command::SweepK: return run_sweep_k(cfg, out, err);
        case Command::Verify: return run_verify(cfg, out, err);
        case Command::ShootPlot: return run_shoot_plot(cfg, out, err);
    }
    return kExitUsageError;
}

namespace {

void apply_config_file(const std::string& path, CliConfig& cfg, const CLI::App* sub) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("config: cannot open '" + path + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config: invalid JSON in '" + path + "': " + e.what());
    }
    if (!doc.is_object()) {
        throw std::invalid_argument("config: top level must be a JSON object");
    }

    // Explicit flags win over config values, so only fill fields whose flag
    // was not given on the command line.
    const auto given = [&](const std::string& flag) { return sub->count(flag) > 0; };
    const auto number = [&](const nlohmann::json& v, const std::string& key) {
        if (!v.is_number()) {
            throw std::invalid_argument("config: '" + key + "' must be a number");
        }
        return v.get<double>();
    };

    for (const auto& [key, value] : doc.items()) {
        if (key == "lambda") {
            if (!given("--lambda")) cfg.params.lam = number(value, key);
        } else if (key == "sigma") {
            if (!given("--sigma")) cfg.params.sigma = number(value, key);
        } else if (key == "eta") {
            if (!given("--eta")) cfg.params.eta = number(value, key);
        } else if (key == "gamma") {
            if (!given("--gamma")) cfg.params.gamma = number(value, key);
        } else if (key == "k") {
            if (!given("--k")) cfg.params.k = number(value, key);
        } else if (key == "X") {
            if (!given("--X")) cfg.params.X = number(value, key);
        } else if (key == "T") {
            if (!given("--T")) cfg.params.T = number(value, key);
        } else if (key == "n_samples") {
            if (!given("--n-samples")) {
                if (!value.is_number_integer()) {
                    throw std::invalid_argument("config: 'n_samples' must be an integer");
                }
                cfg.n_samples = value.get<int>();
            }
        } else if (key == "k_list") {
            if (!given("--k-list")) {
                if (!value.is_array()) {
                    throw std::invalid_argument("config: 'k_list' must be an array");
                }
                cfg.k_list.clear();
                for (const auto& item : value) cfg.k_list.push_back(number(item, key));
            }
        } else if (key == "format") {
            if (!given("--format")) {
                const std::string f = value.get<std::string>();
                if (f == "csv") {
                    cfg.format = OutputFormat::Csv;
                } else if (f == "json") {
                    cfg.format = OutputFormat::Json;
                } else {
                    throw std::invalid_argument("config: 'format' must be csv or json");
                }
                cfg.format_given = true;
            }
        } else if (key == "output") {
            if (!given("--output")) cfg.output_path = value.get<std::string>();
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
}

}  // namespace

CliConfig parse_command_line(int argc, const char* const* argv) {
    CLI::App app{"optimal trade execution schedules under power-law market impact"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string format_str;
    std::string config_path;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--lambda", cfg.params.lam, "risk aversion (> 0)");
        sub->add_option("--sigma", cfg.params.sigma, "volatility (> 0)");
        sub->add_option("--eta", cfg.params.eta, "temporary impact coefficient (> 0)");
        sub->add_option("--gamma", cfg.params.gamma, "permanent impact coefficient (>= 0)");
        sub->add_option("--k", cfg.params.k, "impact exponent (> 0)");
        sub->add_option("--X", cfg.params.X, "initial holdings (> 0)");
        sub->add_option("--T", cfg.params.T, "trading horizon (> 0)");
        sub->add_option("--n-samples", cfg.n_samples, "trajectory samples (>= 3)");
        sub->add_option("--k-list", cfg.k_list, "comma-separated exponents for sweep-k")
            ->delimiter(',');
        sub->add_option("--format", format_str, "output format: csv or json");
        sub->add_option("--output", cfg.output_path, "output file, '-' for stdout");
        sub->add_option("--config", config_path, "JSON file with flag defaults");
        return sub;
    };

    std::map<std::string, Command> names;
    names["solve"] = Command::Solve;
    names["trajectory"] = Command::Trajectory;
    names["sweep-k"] = Command::SweepK;
    names["verify"] = Command::Verify;
    names["shoot-plot"] = Command::ShootPlot;
    add_common(app.add_subcommand("solve", "solve and print a full report"));
    add_common(app.add_subcommand("trajectory", "print the sampled schedule as CSV"));
    add_common(app.add_subcommand("sweep-k", "solve across a list of impact exponents"));
    add_common(app.add_subcommand("verify", "run self-checks and report residuals"));
    add_common(app.add_subcommand("shoot-plot", "sample the shooting curve as CSV"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        const auto* scope = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        throw HelpRequested(scope->help());
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(std::string("usage: ") + e.what());
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = names.at(sub->get_name());

    if (sub->count("--format") > 0) {
        if (format_str == "csv") {
            cfg.format = OutputFormat::Csv;
        } else if (format_str == "json") {
            cfg.format = OutputFormat::Json;
        } else {
            throw std::invalid_argument("--format must be csv or json");
        }
        cfg.format_given = true;
    }

    if (sub->count("--config") > 0) {
        apply_config_file(config_path, cfg, sub);
    }

    // Commands with a fixed output shape reject the mismatched format.
    const bool wants_json = cfg.format_given && cfg.format == OutputFormat::Json;
    const bool wants_csv = cfg.format_given && cfg.format == OutputFormat::Csv;
    switch (cfg.command) {
        case Command::Solve:
            if (!cfg.format_given) cfg.format = OutputFormat::Json;
            break;
        case Command::Trajectory:
        case Command::SweepK:
        case Command::ShootPlot:
            if (wants_json) {
                throw std::invalid_argument("--format json is not available for this command");
            }
            cfg.format = OutputFormat::Csv;
            break;
        case Command::Verify:
            if (wants_csv) {
                throw std::invalid_argument("--format csv is not available for verify");
            }
            cfg.format = OutputFormat::Json;
            break;
    }

    return cfg;
}

}  // namespace exechyper::cli
