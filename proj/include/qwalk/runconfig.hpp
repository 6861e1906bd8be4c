#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/engine.hpp"
#include "qwalk/photonics.hpp"

namespace qwalk {

enum class ExperimentKind {
    Unrestricted,
    Finite,
    Prep,
    Transfer,
    Budget,
    Sweep,
    MonteCarlo,
    TransferSearch,
};

std::string to_string(ExperimentKind kind);

enum class OutputFormat { Csv, Json };

/// Parsed run configuration (JSON document; see README for the schema).
struct RunConfig {
    ExperimentKind kind = ExperimentKind::Unrestricted;

    // schedule source: inline DSL text, a file path, or kind-specific defaults
    std::optional<std::string> schedule_inline;
    std::optional<std::string> schedule_path;

    int initial_position = 0;
    CoinState initial_coin{complexd{1.0, 0.0}, complexd{0.0, 0.0}};

    int steps = 20;

    // finite
    int half_width = 3;
    std::string interior_coin = "qwp 45";

    // prep
    std::string prep_variant = "A";
    int prep_extra_steps = 0;
    std::string prep_continue_coin = "qwp-";

    // transfer / transfer-search
    int transfer_period = 5;
    int transfer_periods = 3;
    int search_source = 0;
    int search_target = 1;

    // tomography (optional section used by the tomography subcommand)
    struct Tomography {
        int position = 0;
        long shots = 1000;
        bool oracle = false;
    };
    std::optional<Tomography> tomography;

    LossModel losses;
    std::optional<TimingConfig> timing;
    std::optional<PhotonBudget> budget;
    struct Sweep {
        std::vector<double> losses;
        std::vector<double> dynamic_ranges_db;
        int cap = 1000;
    };
    std::optional<Sweep> sweep;
    PerturbationSpec perturbation;

    std::uint64_t seed = 0;
    OutputFormat format = OutputFormat::Csv;

    std::string config_hash;  // FNV-1a over the canonical JSON dump
};

/// Throws std::runtime_error with the offending field on malformed input.
RunConfig load_config_text(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity;
    std::string field;
    std::string message;
};

/// Hard violations become errors (e.g. timing overlap for the requested step
/// count without boundaries); soft ones warnings (APD damage threshold, more
/// than three distinct coin operators per run).
std::vector<Diagnostic> validate_config(const RunConfig& config);

/// Resolve the schedule a walk-experiment config describes (used by run and
/// by tests exercising the config surface directly).
Schedule resolve_schedule(const RunConfig& config);

/// Execute the experiment, writing output files under out_dir. Returns the
/// list of files written. Deterministic for fixed (config, seed).
std::vector<std::string> run_config(const RunConfig& config, const std::string& out_dir);

/// Evolve the configured walk, then tomograph the final state at the position
/// given in the config's tomography section (counts, reconstruction, and the
/// fidelity of the reconstruction against the exact conditional state).
std::vector<std::string> run_tomography(const RunConfig& config, const std::string& out_dir);

}  // namespace qwalk
