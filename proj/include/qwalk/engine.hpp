#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qwalk/schedule.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Polarization-dependent per-roundtrip amplitude transmissions. The H and V
/// paths go through different fibre couplings; the EOM factor hits both.
struct LossModel {
    double eta_h = 1.0;
    double eta_v = 1.0;
    double eta_eom = 1.0;
    bool enabled = false;

    static LossModel lossless() { return {}; }

    /// Default for measurement-matching runs: 1.5% H/V coupling asymmetry
    /// (the Monte Carlo scan's coupling variation scale) and 2% EOM loss.
    static LossModel reference_default() { return {1.0, 0.985, 0.98, true}; }

    void validate() const;  // factors must lie in (0, 1]
};

/// Full per-step record of one schedule run. step_tables[n] is the read-out
/// after the shift of step n (index 0 = initial state); raw_norms[n] is the
/// squared norm before renormalization, non-increasing when losses are on.
struct RunRecord {
    Schedule schedule;
    int step_offset = 0;  // display offset, e.g. after in-loop state preparation
    std::vector<ProbabilityTable> step_tables;
    std::vector<double> raw_norms;
    WalkState final_state;
    std::uint64_t seed = 0;
    std::string config_hash;

    const ProbabilityTable& table_at(int step) const;  // throws if out of range
    int recorded_steps() const { return static_cast<int>(step_tables.size()) - 1; }
};

/// Iterate coin-then-shift over the schedule's steps; when losses are enabled,
/// multiply h amplitudes by eta_h*eta_eom and v by eta_v*eta_eom after each
/// shift. The initial state must be normalized.
RunRecord evolve(const WalkState& initial, const Schedule& schedule,
                 const LossModel& losses = LossModel::lossless());

/// Step x position matrix of P_H + P_V, rows = steps 1..N; the step-0 table
/// stays available through the record.
struct Chessboard {
    std::vector<int> positions;    // sorted column labels
    std::vector<int> step_labels;  // row labels, step_offset applied
    std::vector<std::vector<double>> prob;

    double at_step_position(int step_label, int position) const;
    double mean_position(int step_label) const;
};

Chessboard chessboard(const RunRecord& record);

}  // namespace qwalk
