#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qwalk/runconfig.hpp"
#include "qwalk/version.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::string> format;
    std::optional<std::uint64_t> seed;
    std::optional<int> steps;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "configuration file (JSON)")
        ->required();
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_option("--format", flags.format, "output format: csv or json");
    cmd->add_option("--seed", flags.seed, "override the configured seed");
    cmd->add_option("--steps", flags.steps, "override the configured step count");
}

qwalk::RunConfig load(const CommonFlags& flags) {
    qwalk::RunConfig config = qwalk::load_config_file(flags.config_path);
    if (flags.format) {
        if (*flags.format == "csv") {
            config.format = qwalk::OutputFormat::Csv;
        } else if (*flags.format == "json") {
            config.format = qwalk::OutputFormat::Json;
        } else {
            throw std::runtime_error("config field 'format': expected csv or json");
        }
    }
    if (flags.seed) {
        config.seed = *flags.seed;
        config.perturbation.seed = *flags.seed;
    }
    if (flags.steps) config.steps = *flags.steps;
    return config;
}

// hard config problems -> exit 1 before any experiment runs
bool report_errors(const std::vector<qwalk::Diagnostic>& diagnostics) {
    bool has_error = false;
    for (const auto& d : diagnostics) {
        const char* tag =
            d.severity == qwalk::Diagnostic::Severity::Error ? "error" : "warning";
        std::cerr << tag << ": " << d.field << ": " << d.message << "\n";
        if (d.severity == qwalk::Diagnostic::Severity::Error) has_error = true;
    }
    return has_error;
}

int run_subcommand(const CommonFlags& flags,
                   const std::vector<qwalk::ExperimentKind>& allowed_kinds,
                   bool tomography_mode) {
    qwalk::RunConfig config;
    try {
        config = load(flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    bool kind_ok = false;
    for (auto k : allowed_kinds) kind_ok = kind_ok || (config.kind == k);
    if (!kind_ok) {
        std::cerr << "error: experiment: kind '" << qwalk::to_string(config.kind)
                  << "' does not match this subcommand\n";
        return 1;
    }
    if (report_errors(qwalk::validate_config(config))) return 1;
    try {
        const auto files = tomography_mode ? qwalk::run_tomography(config, flags.out_dir)
                                           : qwalk::run_config(config, flags.out_dir);
        for (const auto& f : files) std::cout << f << "\n";
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-multiplexed quantum walk simulator and experiment designer"};
    app.set_version_flag("--version", std::string("qwalk ") + qwalk::kVersion);
    app.require_subcommand(1);

    CommonFlags simulate_flags, budget_flags, sweep_flags, search_flags, tomo_flags,
        mc_flags, validate_flags;

    CLI::App* simulate =
        app.add_subcommand("simulate", "run a walk experiment (chessboard export)");
    add_common(simulate, simulate_flags);
    CLI::App* budget = app.add_subcommand("budget", "photon-number budget table");
    add_common(budget, budget_flags);
    CLI::App* sweep =
        app.add_subcommand("sweep", "attainable steps over loss and dynamic range");
    add_common(sweep, sweep_flags);
    CLI::App* search =
        app.add_subcommand("transfer-search", "brute-force transfer scheme search");
    add_common(search, search_flags);
    CLI::App* tomography =
        app.add_subcommand("tomography", "tomograph the evolved state at a position");
    add_common(tomography, tomo_flags);
    CLI::App* montecarlo =
        app.add_subcommand("montecarlo", "Monte Carlo error bars for a walk");
    add_common(montecarlo, mc_flags);
    CLI::App* validate = app.add_subcommand("validate", "check a configuration");
    add_common(validate, validate_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);  // prints the message or the help text
        return rc == 0 ? 0 : 1;     // usage errors exit 1
    }

    using EK = qwalk::ExperimentKind;
    const std::vector<EK> walk_kinds{EK::Unrestricted, EK::Finite, EK::Prep, EK::Transfer};

    if (simulate->parsed()) {
        return run_subcommand(simulate_flags, walk_kinds, false);
    }
    if (budget->parsed()) {
        return run_subcommand(budget_flags, {EK::Budget}, false);
    }
    if (sweep->parsed()) {
        return run_subcommand(sweep_flags, {EK::Sweep}, false);
    }
    if (search->parsed()) {
        return run_subcommand(search_flags, {EK::TransferSearch}, false);
    }
    if (montecarlo->parsed()) {
        return run_subcommand(mc_flags, {EK::MonteCarlo}, false);
    }
    if (tomography->parsed()) {
        return run_subcommand(tomo_flags,
                              {EK::Unrestricted, EK::Finite, EK::Prep, EK::Transfer},
                              true);
    }
    if (validate->parsed()) {
        qwalk::RunConfig config;
        try {
            config = load(validate_flags);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        const auto diagnostics = qwalk::validate_config(config);
        if (diagnostics.empty()) std::cout << "ok\n";
        return report_errors(diagnostics) ? 1 : 0;
    }
    return 1;
}
