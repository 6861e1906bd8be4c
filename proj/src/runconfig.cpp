#include "qwalk/runconfig.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qwalk/protocols.hpp"
#include "qwalk/version.hpp"

namespace qwalk {

namespace {

using nlohmann::json;

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

[[noreturn]] void config_error(const std::string& field, const std::string& message) {
    throw std::runtime_error("config field '" + field + "': " + message);
}

CoinSpec parse_coin_token(const std::string& token, const std::string& field) {
    try {
        const Schedule probe = parse_schedule("steps 1\ndefault coin " + token + "\n");
        return probe.default_coin();
    } catch (const ParseError& e) {
        config_error(field, std::string("bad coin '") + token + "': " + e.what());
    }
}

CoinState parse_initial_coin(const json& j, const std::string& field) {
    const double s = 1.0 / std::sqrt(2.0);
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        if (name == "H") return {complexd{1, 0}, complexd{0, 0}};
        if (name == "V") return {complexd{0, 0}, complexd{1, 0}};
        if (name == "D") return {complexd{s, 0}, complexd{s, 0}};
        if (name == "A") return {complexd{s, 0}, complexd{-s, 0}};
        if (name == "R") return {complexd{s, 0}, complexd{0, s}};
        if (name == "L") return {complexd{s, 0}, complexd{0, -s}};
        config_error(field, "unknown coin state name '" + name + "'");
    }
    if (j.is_object() && j.contains("h") && j.contains("v")) {
        auto read = [&](const json& e) -> complexd {
            if (!e.is_array() || e.size() != 2) {
                config_error(field, "amplitudes must be [re, im] pairs");
            }
            return {e[0].get<double>(), e[1].get<double>()};
        };
        return {read(j.at("h")), read(j.at("v"))};
    }
    config_error(field, "expected a state name or {\"h\": [re,im], \"v\": [re,im]}");
}

ExperimentKind parse_kind(const std::string& name) {
    if (name == "unrestricted") return ExperimentKind::Unrestricted;
    if (name == "finite") return ExperimentKind::Finite;
    if (name == "prep") return ExperimentKind::Prep;
    if (name == "transfer") return ExperimentKind::Transfer;
    if (name == "budget") return ExperimentKind::Budget;
    if (name == "sweep") return ExperimentKind::Sweep;
    if (name == "montecarlo") return ExperimentKind::MonteCarlo;
    if (name == "transfer-search") return ExperimentKind::TransferSearch;
    config_error("experiment", "unknown experiment kind '" + name + "'");
}

}  // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Unrestricted: return "unrestricted";
        case ExperimentKind::Finite: return "finite";
        case ExperimentKind::Prep: return "prep";
        case ExperimentKind::Transfer: return "transfer";
        case ExperimentKind::Budget: return "budget";
        case ExperimentKind::Sweep: return "sweep";
        case ExperimentKind::MonteCarlo: return "montecarlo";
        case ExperimentKind::TransferSearch: return "transfer-search";
    }
    return "?";
}

RunConfig load_config_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig c;
    if (!j.contains("experiment")) config_error("experiment", "missing");
    c.kind = parse_kind(j.at("experiment").get<std::string>());
    c.config_hash = fnv1a_hex(j.dump());

    if (j.contains("steps")) c.steps = j.at("steps").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("format")) {
        const std::string f = j.at("format").get<std::string>();
        if (f == "csv") {
            c.format = OutputFormat::Csv;
        } else if (f == "json") {
            c.format = OutputFormat::Json;
        } else {
            config_error("format", "expected 'csv' or 'json', got '" + f + "'");
        }
    }

    if (j.contains("initial")) {
        const json& init = j.at("initial");
        if (init.contains("position")) c.initial_position = init.at("position").get<int>();
        if (init.contains("coin")) {
            c.initial_coin = parse_initial_coin(init.at("coin"), "initial.coin");
        }
    }

    if (j.contains("schedule")) {
        const json& s = j.at("schedule");
        if (s.contains("inline")) c.schedule_inline = s.at("inline").get<std::string>();
        if (s.contains("path")) c.schedule_path = s.at("path").get<std::string>();
        if (c.schedule_inline && c.schedule_path) {
            config_error("schedule", "give either 'inline' or 'path', not both");
        }
    }

    if (j.contains("finite")) {
        const json& f = j.at("finite");
        if (f.contains("half_width")) c.half_width = f.at("half_width").get<int>();
        if (f.contains("interior")) c.interior_coin = f.at("interior").get<std::string>();
    }
    if (j.contains("prep")) {
        const json& p = j.at("prep");
        if (p.contains("variant")) c.prep_variant = p.at("variant").get<std::string>();
        if (p.contains("extra_steps")) c.prep_extra_steps = p.at("extra_steps").get<int>();
        if (p.contains("continue_coin")) {
            c.prep_continue_coin = p.at("continue_coin").get<std::string>();
        }
        if (c.prep_variant != "A" && c.prep_variant != "B") {
            config_error("prep.variant", "expected 'A' or 'B'");
        }
    }
    if (j.contains("transfer")) {
        const json& t = j.at("transfer");
        if (t.contains("period")) c.transfer_period = t.at("period").get<int>();
        if (t.contains("periods")) c.transfer_periods = t.at("periods").get<int>();
    }
    if (j.contains("transfer_search")) {
        const json& t = j.at("transfer_search");
        if (t.contains("period")) c.transfer_period = t.at("period").get<int>();
        if (t.contains("source")) c.search_source = t.at("source").get<int>();
        if (t.contains("target")) c.search_target = t.at("target").get<int>();
    }
    if (j.contains("tomography")) {
        const json& t = j.at("tomography");
        RunConfig::Tomography tomo;
        if (t.contains("position")) tomo.position = t.at("position").get<int>();
        if (t.contains("shots")) tomo.shots = t.at("shots").get<long>();
        if (t.contains("oracle")) tomo.oracle = t.at("oracle").get<bool>();
        c.tomography = tomo;
    }

    if (j.contains("loss")) {
        const json& l = j.at("loss");
        if (l.contains("enabled")) c.losses.enabled = l.at("enabled").get<bool>();
        if (l.contains("eta_h")) c.losses.eta_h = l.at("eta_h").get<double>();
        if (l.contains("eta_v")) c.losses.eta_v = l.at("eta_v").get<double>();
        if (l.contains("eta_eom")) c.losses.eta_eom = l.at("eta_eom").get<double>();
    }
    if (j.contains("timing")) {
        const json& t = j.at("timing");
        TimingConfig timing{};
        for (const char* key : {"tau_pos", "tau_rt", "tau_rep"}) {
            if (!t.contains(key)) config_error(std::string("timing.") + key, "missing");
        }
        timing.tau_pos = t.at("tau_pos").get<double>();
        timing.tau_rt = t.at("tau_rt").get<double>();
        timing.tau_rep = t.at("tau_rep").get<double>();
        c.timing = timing;
    }
    if (j.contains("budget")) {
        const json& b = j.at("budget");
        PhotonBudget budget{};
        struct Field {
            const char* key;
            double* slot;
        };
        const Field fields[] = {
            {"p_laser", &budget.p_laser}, {"e_photon", &budget.e_photon},
            {"f_rep", &budget.f_rep},     {"r_in", &budget.r_in},
            {"r_out", &budget.r_out},     {"l_rt", &budget.l_rt},
            {"l_bs", &budget.l_bs},
        };
        for (const auto& f : fields) {
            if (!b.contains(f.key)) config_error(std::string("budget.") + f.key, "missing");
            *f.slot = b.at(f.key).get<double>();
        }
        if (b.contains("concentrate")) budget.concentrate = b.at("concentrate").get<bool>();
        c.budget = budget;
    }
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        RunConfig::Sweep sweep;
        if (!s.contains("losses") || !s.contains("dynamic_ranges_db")) {
            config_error("sweep", "needs 'losses' and 'dynamic_ranges_db' arrays");
        }
        sweep.losses = s.at("losses").get<std::vector<double>>();
        sweep.dynamic_ranges_db = s.at("dynamic_ranges_db").get<std::vector<double>>();
        if (s.contains("cap")) sweep.cap = s.at("cap").get<int>();
        c.sweep = sweep;
    }
    if (j.contains("perturbation")) {
        const json& p = j.at("perturbation");
        if (p.contains("coupling_sigma")) {
            c.perturbation.coupling_sigma = p.at("coupling_sigma").get<double>();
        }
        if (p.contains("eom_sigma")) {
            c.perturbation.eom_transmission_sigma = p.at("eom_sigma").get<double>();
        }
        if (p.contains("angle_sigma_deg")) {
            c.perturbation.coin_angle_sigma_deg = p.at("angle_sigma_deg").get<double>();
        }
        if (p.contains("trials")) c.perturbation.trials = p.at("trials").get<int>();
    }
    c.perturbation.seed = c.seed;
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config_text(buf.str());
}

Schedule resolve_schedule(const RunConfig& config) {
    if (config.schedule_inline) return parse_schedule(*config.schedule_inline);
    if (config.schedule_path) {
        std::ifstream in(*config.schedule_path, std::ios::binary);
        if (!in) {
            config_error("schedule.path", "cannot open '" + *config.schedule_path + "'");
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_schedule(buf.str());
    }
    switch (config.kind) {
        case ExperimentKind::Unrestricted: {
            // coin of the measured unrestricted walk: physical QWP at 36 deg
            return Schedule(config.steps, CoinSpec::qwp_at(36.0));
        }
        case ExperimentKind::Finite:
        case ExperimentKind::MonteCarlo: {
            const CoinSpec interior =
                parse_coin_token(config.interior_coin, "finite.interior");
            return finite_graph_schedule(config.half_width, interior, config.steps);
        }
        case ExperimentKind::Prep: {
            const CoinSpec continue_coin =
                parse_coin_token(config.prep_continue_coin, "prep.continue_coin");
            const int total = 3 + std::max(0, config.prep_extra_steps);
            Schedule s(total, continue_coin);
            ScheduleOverride prep_coins;
            prep_coins.step_lo = 1;
            prep_coins.step_hi = 3;
            prep_coins.all_positions = true;
            prep_coins.coin = CoinSpec::qwp_minus();
            s.add_override(std::move(prep_coins));
            ScheduleOverride t_step;
            t_step.step_lo = t_step.step_hi = (config.prep_variant == "A") ? 3 : 2;
            t_step.all_positions = true;
            t_step.coin = CoinSpec::transmission();
            s.add_override(std::move(t_step));
            return s;
        }
        case ExperimentKind::Transfer: {
            return transfer_scheme(config.transfer_period)
                .to_schedule(config.transfer_periods);
        }
        default:
            config_error("schedule", "experiment kind '" + to_string(config.kind) +
                                         "' does not run a schedule");
    }
}

std::vector<Diagnostic> validate_config(const RunConfig& config) {
    std::vector<Diagnostic> diagnostics;
    auto error = [&](const std::string& field, const std::string& message) {
        diagnostics.push_back({Diagnostic::Severity::Error, field, message});
    };
    auto warning = [&](const std::string& field, const std::string& message) {
        diagnostics.push_back({Diagnostic::Severity::Warning, field, message});
    };

    if (config.schedule_path) {
        if (!std::filesystem::exists(*config.schedule_path)) {
            error("schedule.path", "file '" + *config.schedule_path + "' does not exist");
        }
    }

    const bool walk_kind = config.kind == ExperimentKind::Unrestricted ||
                           config.kind == ExperimentKind::Finite ||
                           config.kind == ExperimentKind::Prep ||
                           config.kind == ExperimentKind::Transfer ||
                           config.kind == ExperimentKind::MonteCarlo;

    if (walk_kind) {
        if (std::abs(config.initial_coin.squared_norm() - 1.0) > 1e-9) {
            error("initial.coin", "coin state is not normalized");
        }
        try {
            config.losses.validate();
        } catch (const std::exception& e) {
            error("loss", e.what());
        }
        Schedule schedule = [&]() -> Schedule {
            try {
                return resolve_schedule(config);
            } catch (const std::exception& e) {
                error("schedule", e.what());
                return Schedule(1, CoinSpec::transmission());
            }
        }();
        for (const auto& w : schedule.validate()) {
            warning("schedule", w);
        }

        // an unbounded walk must keep its arrival times unambiguous; bounded
        // kinds (finite, transfer) confine the pulse train instead
        const bool bounded = config.kind == ExperimentKind::Finite ||
                             config.kind == ExperimentKind::Transfer ||
                             config.kind == ExperimentKind::MonteCarlo;
        if (config.timing && !bounded) {
            const TimingCheck check = validate_timings(*config.timing, schedule.steps());
            if (!check.ok) {
                error("timing",
                      "step count " + std::to_string(schedule.steps()) +
                          " exceeds the overlap-free maximum m_max = " +
                          std::to_string(check.max_step) +
                          " for these timings and the walk has no boundaries");
            }
        }
    }

    if (config.budget) {
        try {
            config.budget->validate();
            if (damage_threshold_exceeded(*config.budget)) {
                warning("budget", "photon rate at the first roundtrip exceeds the APD "
                                  "damage threshold of 1e5 photons/s");
            }
        } catch (const std::exception& e) {
            error("budget", e.what());
        }
    }

    if (config.kind == ExperimentKind::Budget && !config.budget) {
        error("budget", "budget experiment needs a 'budget' section");
    }
    if (config.kind == ExperimentKind::Sweep && !config.sweep) {
        error("sweep", "sweep experiment needs a 'sweep' section");
    }
    if (config.kind == ExperimentKind::Transfer ||
        config.kind == ExperimentKind::TransferSearch) {
        if (config.kind == ExperimentKind::Transfer &&
            !(config.transfer_period == 5 || config.transfer_period == 6)) {
            error("transfer.period", "canonical schemes exist for periods 5 and 6");
        }
        if (config.transfer_periods < 1) {
            error("transfer.periods", "must be >= 1");
        }
    }
    try {
        config.perturbation.validate();
    } catch (const std::exception& e) {
        error("perturbation", e.what());
    }
    return diagnostics;
}

namespace {

json meta_json(const RunConfig& config) {
    return json{{"version", kVersion},
                {"config_hash", config.config_hash},
                {"seed", config.seed}};
}

std::string meta_csv(const RunConfig& config) {
    std::ostringstream os;
    os << "# qwalk " << kVersion << "\n";
    os << "# config_hash=" << config.config_hash << "\n";
    os << "# seed=" << config.seed << "\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

std::string chessboard_csv(const RunConfig& config, const Chessboard& board) {
    std::ostringstream os;
    os << meta_csv(config);
    os << "step";
    for (int x : board.positions) os << "," << x;
    os << "\n";
    for (std::size_t r = 0; r < board.step_labels.size(); ++r) {
        os << board.step_labels[r];
        for (double p : board.prob[r]) os << "," << fmt9(p);
        os << "\n";
    }
    return os.str();
}

json record_json(const RunConfig& config, const RunRecord& record) {
    json tables = json::array();
    for (int n = 0; n <= record.recorded_steps(); ++n) {
        json rows = json::array();
        for (const auto& row : record.table_at(n).rows) {
            rows.push_back(json{{"position", row.position},
                                {"p_h", row.p_h},
                                {"p_v", row.p_v}});
        }
        tables.push_back(json{{"step", n + record.step_offset}, {"rows", rows}});
    }
    return json{{"meta", meta_json(config)},
                {"step_offset", record.step_offset},
                {"raw_norms", record.raw_norms},
                {"tables", tables}};
}

json density_json(const DensityMatrix& rho) {
    auto entry = [](complexd z) { return json::array({z.real(), z.imag()}); };
    return json::array({json::array({entry(rho.m00()), entry(rho.m01())}),
                        json::array({entry(rho.m10()), entry(rho.m11())})});
}

}  // namespace

std::vector<std::string> run_config(const RunConfig& config, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> written;
    auto out_path = [&](const std::string& name) { return out_dir + "/" + name; };
    auto emit = [&](const std::string& name, const std::string& content) {
        write_file(out_path(name), content);
        written.push_back(out_path(name));
    };

    switch (config.kind) {
        case ExperimentKind::Unrestricted:
        case ExperimentKind::Finite:
        case ExperimentKind::Prep: {
            const Schedule schedule = resolve_schedule(config);
            const WalkState initial =
                WalkState::localized(config.initial_position, config.initial_coin);
            RunRecord record = evolve(initial, schedule, config.losses);
            if (config.kind == ExperimentKind::Prep) record.step_offset = -3;
            if (config.format == OutputFormat::Csv) {
                emit("chessboard.csv", chessboard_csv(config, chessboard(record)));
            } else {
                emit("record.json", record_json(config, record).dump(2) + "\n");
            }
            break;
        }
        case ExperimentKind::Transfer: {
            const TransferScheme scheme = transfer_scheme(config.transfer_period);
            const Schedule schedule = scheme.to_schedule(config.transfer_periods);
            const WalkState initial =
                WalkState::localized(scheme.source, config.initial_coin);
            const RunRecord record = evolve(initial, schedule, config.losses);
            const auto observations =
                verify_transfer(scheme, DensityMatrix::pure(config.initial_coin),
                                config.transfer_periods, config.losses);
            emit("scheme.dsl", scheme.to_dsl(1));
            if (config.format == OutputFormat::Csv) {
                emit("chessboard.csv", chessboard_csv(config, chessboard(record)));
                std::ostringstream os;
                os << meta_csv(config) << "step,position,fidelity\n";
                for (const auto& ob : observations) {
                    os << ob.step << "," << ob.position << "," << fmt9(ob.fidelity) << "\n";
                }
                emit("fidelities.csv", os.str());
            } else {
                json fid = json::array();
                for (const auto& ob : observations) {
                    fid.push_back(json{{"step", ob.step},
                                       {"position", ob.position},
                                       {"fidelity", ob.fidelity},
                                       {"rho", density_json(ob.rho)}});
                }
                json doc = record_json(config, record);
                doc["fidelities"] = fid;
                emit("record.json", doc.dump(2) + "\n");
            }
            break;
        }
        case ExperimentKind::Budget: {
            if (!config.budget) throw std::runtime_error("budget section missing");
            const PhotonBudget& b = *config.budget;
            if (config.format == OutputFormat::Csv) {
                std::ostringstream os;
                os << meta_csv(config) << "n,photons,multi_photon_probability\n";
                for (int n = 1; n <= config.steps; ++n) {
                    const double mean = photon_number(b, n);
                    os << n << "," << fmt9(mean) << ","
                       << fmt9(multi_photon_probability(mean)) << "\n";
                }
                emit("budget.csv", os.str());
            } else {
                json rows = json::array();
                for (int n = 1; n <= config.steps; ++n) {
                    const double mean = photon_number(b, n);
                    rows.push_back(json{{"n", n},
                                        {"photons", mean},
                                        {"multi_photon_probability",
                                         multi_photon_probability(mean)}});
                }
                emit("budget.json",
                     json{{"meta", meta_json(config)},
                          {"damage_threshold_exceeded", damage_threshold_exceeded(b)},
                          {"rows", rows}}
                             .dump(2) +
                         "\n");
            }
            break;
        }
        case ExperimentKind::Sweep: {
            if (!config.sweep) throw std::runtime_error("sweep section missing");
            std::ostringstream os;
            os << meta_csv(config) << "loss,dynamic_range_db,n_max\n";
            json rows = json::array();
            for (double loss : config.sweep->losses) {
                for (double dr : config.sweep->dynamic_ranges_db) {
                    const int n = attainable_steps(loss, dr, config.sweep->cap);
                    os << fmt9(loss) << "," << fmt9(dr) << "," << n << "\n";
                    rows.push_back(json{{"loss", loss}, {"dynamic_range_db", dr},
                                        {"n_max", n}});
                }
            }
            if (config.format == OutputFormat::Csv) {
                emit("sweep.csv", os.str());
            } else {
                emit("sweep.json",
                     json{{"meta", meta_json(config)}, {"rows", rows}}.dump(2) + "\n");
            }
            break;
        }
        case ExperimentKind::MonteCarlo: {
            const Schedule schedule = resolve_schedule(config);
            const WalkState initial =
                WalkState::localized(config.initial_position, config.initial_coin);
            const LossModel base =
                config.losses.enabled ? config.losses : SimConfig::perturbation_base();
            const SimConfig sim{initial, schedule, base};
            const ErrorBarTable table = monte_carlo_errorbars(sim, config.perturbation);
            if (config.format == OutputFormat::Csv) {
                std::ostringstream os;
                os << meta_csv(config) << "step,position,polarization,mean,stddev\n";
                for (const auto& row : table.rows) {
                    os << row.step << "," << row.position << "," << row.polarization
                       << "," << fmt9(row.mean) << "," << fmt9(row.stddev) << "\n";
                }
                emit("errorbars.csv", os.str());
            } else {
                json rows = json::array();
                for (const auto& row : table.rows) {
                    rows.push_back(json{{"step", row.step},
                                        {"position", row.position},
                                        {"polarization", std::string(1, row.polarization)},
                                        {"mean", row.mean},
                                        {"stddev", row.stddev}});
                }
                emit("errorbars.json",
                     json{{"meta", meta_json(config)},
                          {"trials", table.trials},
                          {"rows", rows}}
                             .dump(2) +
                         "\n");
            }
            break;
        }
        case ExperimentKind::TransferSearch: {
            const auto schemes = search_transfer_schedules(
                config.transfer_period, config.search_source, config.search_target);
            json list = json::array();
            for (const auto& s : schemes) {
                json r_cells = json::array();
                for (const auto& [cell, is_r] : s.cells) {
                    if (is_r) r_cells.push_back(json::array({cell.first, cell.second}));
                }
                list.push_back(json{{"period", s.period},
                                    {"source", s.source},
                                    {"target", s.target},
                                    {"r_cells", r_cells}});
            }
            emit("schemes.json", json{{"meta", meta_json(config)},
                                      {"count", schemes.size()},
                                      {"schemes", list}}
                                         .dump(2) +
                                     "\n");
            if (const TransferScheme* canon = canonical_scheme(schemes)) {
                emit("canonical.dsl", canon->to_dsl(1));
            }
            break;
        }
    }
    return written;
}

std::vector<std::string> run_tomography(const RunConfig& config, const std::string& out_dir) {
    if (!config.tomography) {
        throw std::runtime_error("config field 'tomography': section missing");
    }
    std::filesystem::create_directories(out_dir);
    const Schedule schedule = resolve_schedule(config);
    const WalkState initial =
        WalkState::localized(config.initial_position, config.initial_coin);
    const RunRecord record = evolve(initial, schedule, config.losses);
    const WalkState& state = record.final_state;
    const RunConfig::Tomography& tomo = *config.tomography;

    const TomographyCounts counts =
        tomo.oracle ? exact_tomography(state, tomo.position)
                    : simulate_tomography(state, tomo.position, tomo.shots, config.seed);
    const DensityMatrix reconstructed = reconstruct(counts);
    const DensityMatrix exact = conditional_density(state, tomo.position);

    json doc{{"meta", meta_json(config)},
             {"position", tomo.position},
             {"oracle", tomo.oracle},
             {"shots", tomo.shots},
             {"counts",
              json{{"h", counts.h}, {"v", counts.v}, {"d", counts.d},
                   {"a", counts.a}, {"r", counts.r}, {"l", counts.l}}},
             {"reconstructed", density_json(reconstructed)},
             {"exact", density_json(exact)},
             {"fidelity", fidelity(exact, reconstructed)}};
    const std::string path = out_dir + "/tomography.json";
    write_file(path, doc.dump(2) + "\n");
    return {path};
}

}  // namespace qwalk
