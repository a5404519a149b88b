#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "exechyper/model.hpp"

namespace exechyper::cli {

enum class Command { Solve, Trajectory, SweepK, Verify, ShootPlot };
enum class OutputFormat { Csv, Json };

struct CliConfig {
    Command command = Command::Solve;
    model::ModelParams params;
    int n_samples = 201;
    std::vector<double> k_list;        // sweep-k only, must be non-empty there
    std::string output_path = "-";     // "-" writes to stdout
    OutputFormat format = OutputFormat::Json;
    bool format_given = false;         // true when --format/config set it explicitly
};

// Exit codes shared by the binary and the test harness.
inline constexpr int kExitOk = 0;
inline constexpr int kExitComputeError = 1;
inline constexpr int kExitUsageError = 2;

// Thrown by parse_command_line on --help; carries the text to print.
class HelpRequested : public std::runtime_error {
public:
    explicit HelpRequested(const std::string& text) : std::runtime_error(text) {}
};

// Parses argv (subcommand plus flags, with optional --config JSON file whose
// values explicit flags override). Throws std::invalid_argument with a
// field-specific message on bad input.
CliConfig parse_command_line(int argc, const char* const* argv);

// Executes cfg.command, writing results to `out` and diagnostics or error
// reports to `err`. Returns an exit code; never throws for model or solver
// failures (those become structured error output).
int run_command(const CliConfig& cfg, std::ostream& out, std::ostream& err);

// Individual commands, exposed for tests.
int run_solve(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_trajectory(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_sweep_k(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_shoot_plot(const CliConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace exechyper::cli
