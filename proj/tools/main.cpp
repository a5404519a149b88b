#include <fstream>
#include <iostream>

#include "exechyper/cli.hpp"

int main(int argc, char** argv) {
    using namespace exechyper;
    try {
        const cli::CliConfig cfg = cli::parse_command_line(argc, argv);
        if (cfg.output_path == "-") {
            return cli::run_command(cfg, std::cout, std::cerr);
        }
        std::ofstream out(cfg.output_path);
        if (!out) {
            std::cerr << "error (io): cannot open '" << cfg.output_path << "' for writing\n";
            return cli::kExitComputeError;
        }
        const int rc = cli::run_command(cfg, out, std::cerr);
        out.flush();
        if (!out) {
            std::cerr << "error (io): failed writing '" << cfg.output_path << "'\n";
            return cli::kExitComputeError;
        }
        return rc;
    } catch (const cli::HelpRequested& e) {
        std::cout << e.what();
        return cli::kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error (validation): " << e.what() << "\n";
        return cli::kExitUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error (internal): " << e.what() << "\n";
        return cli::kExitComputeError;
    }
}
