#include "ftqm/cli/commands.hpp"
#include "ftqm/cli/config.hpp"
#include "ftqm/cli/table.hpp"
#include "ftqm/error.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kConfigError = 2,
    kNoConvergence = 3,
    kConsistency = 4,
    kIoError = 5,
};

std::string read_file(const std::string& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw ftqm::IoError("cannot read config file " + path);
    }
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite-temperature quantum spectra, shifts and dynamics", "ftqm"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string format;
    app.add_option("--config", config_path, "JSON run configuration")->required();
    app.add_option("--out", out_dir, "output directory (overrides output.directory)");
    app.add_option("--format", format, "csv or report (overrides output.format)")
        ->check(CLI::IsMember({"csv", "report"}));

    const std::pair<const char*, const char*> commands[] = {
        {"spectrum", "zero-temperature levels of the configured potential"},
        {"thermal", "self-consistent thermal levels, probabilities and sqrt(Z)"},
        {"shift", "temperature shifts of transition frequencies"},
        {"evolve", "time evolution of thermal stationary states"},
        {"oscillator", "analytic harmonic-oscillator tables"},
        {"ensemble", "ensemble U, F, S and the free-energy closure"},
    };
    for (const auto& [name, help] : commands) {
        app.add_subcommand(name, help)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        const std::string text = read_file(config_path);
        ftqm::cli::RunConfig cfg = ftqm::cli::parse_config(text);
        if (!out_dir.empty()) {
            cfg.output_directory = out_dir;
        }
        if (!format.empty()) {
            cfg.format = ftqm::cli::parse_format(format);
        }
        const ftqm::cli::NamedTables tables = ftqm::cli::run_command(command, cfg);
        for (const auto& [stem, table] : tables) {
            const auto path = ftqm::cli::emit(table, cfg.output_directory, stem, cfg.format);
            std::cout << path.string() << "\n";
        }
        ftqm::cli::write_text(std::filesystem::path(cfg.output_directory) / "run_meta.txt",
                              ftqm::cli::run_meta(command, text));
    } catch (const ftqm::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ftqm::InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kConfigError;
    } catch (const ftqm::ConvergenceError& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return kNoConvergence;
    } catch (const ftqm::ConsistencyError& e) {
        std::cerr << "consistency check failed: " << e.what() << "\n";
        return kConsistency;
    } catch (const ftqm::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kOk;
}
