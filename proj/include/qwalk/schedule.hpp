#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// One "at STEPSPEC pos POSSPEC coin COIN" clause. Later clauses win.
struct ScheduleOverride {
    bool all_steps = false;
    int step_lo = 1, step_hi = 1;       // inclusive, used when !all_steps
    bool all_positions = false;
    std::vector<int> positions;         // used when !all_positions
    CoinSpec coin;

    bool matches(int step, int position) const;
};

/// Per-(step, position) coin program: the pattern the EOM would execute.
/// Lookup is total; the last matching override wins, otherwise the default.
class Schedule {
public:
    Schedule(int steps, CoinSpec default_coin);

    /// Override ranges must lie within [1, steps].
    void add_override(ScheduleOverride ov);

    const CoinSpec& spec_at(int step, int position) const;  // throws on step out of range
    CoinOperator coin_at(int step, int position) const;

    int steps() const { return steps_; }
    const CoinSpec& default_coin() const { return default_coin_; }
    const std::vector<ScheduleOverride>& overrides() const { return overrides_; }

    /// DSL text reproducing this schedule (parse(render()) agrees on coin_at).
    std::string render() const;

    /// Warnings only; currently flags programs needing more than three distinct
    /// operators, which the three-level EOM switching cannot realize in one run.
    std::vector<std::string> validate() const;

    /// Copy with every waveplate-angle coin shifted by delta degrees.
    Schedule with_angle_perturbation(double delta_deg) const;

private:
    int steps_;
    CoinSpec default_coin_;
    std::vector<ScheduleOverride> overrides_;
};

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line_, int col_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ", col " +
                             std::to_string(col_) + ": " + what_),
          line(line_),
          column(col_) {}
};

/// Parse the line-based schedule DSL ('#' starts a comment):
///   steps INT
///   default coin COIN
///   at STEPSPEC pos POSSPEC coin COIN
/// STEPSPEC := "*" | INT | INT..INT ; POSSPEC := "*" | INT ("," INT)*
/// COIN := T | R | H | hwp ANGLE | qwp ANGLE | qwp+ | qwp- | eom PHI [PHASE]
/// Angles in degrees, EOM phases in radians.
Schedule parse_schedule(const std::string& text);

/// R at x = +-half_width for all steps, the interior coin elsewhere.
Schedule finite_graph_schedule(int half_width, CoinSpec interior, int steps);

}  // namespace qwalk
