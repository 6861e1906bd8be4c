#include "qwalk/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qwalk {

void LossModel::validate() const {
    auto check = [](double v, const char* name) {
        if (!(v > 0.0) || v > 1.0) {
            throw std::invalid_argument(std::string("LossModel: ") + name +
                                        " must lie in (0, 1], got " + std::to_string(v));
        }
    };
    check(eta_h, "eta_h");
    check(eta_v, "eta_v");
    check(eta_eom, "eta_eom");
}

const ProbabilityTable& RunRecord::table_at(int step) const {
    if (step < 0 || step >= static_cast<int>(step_tables.size())) {
        throw std::out_of_range("RunRecord: step " + std::to_string(step) +
                                " not recorded (0.." +
                                std::to_string(step_tables.size() - 1) + ")");
    }
    return step_tables[static_cast<std::size_t>(step)];
}

RunRecord evolve(const WalkState& initial, const Schedule& schedule,
                 const LossModel& losses) {
    if (std::abs(initial.squared_norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("evolve: initial state is not normalized (norm^2 = " +
                                    std::to_string(initial.squared_norm()) + ")");
    }
    losses.validate();

    RunRecord record{schedule, 0, {}, {}, {}, 0, {}};
    record.step_tables.reserve(static_cast<std::size_t>(schedule.steps()) + 1);
    record.raw_norms.reserve(static_cast<std::size_t>(schedule.steps()) + 1);
    record.step_tables.push_back(probabilities(initial));
    record.raw_norms.push_back(initial.squared_norm());

    WalkState state = initial;
    for (int n = 1; n <= schedule.steps(); ++n) {
        state = apply_coin_field(state, [&](int x) { return schedule.coin_at(n, x); });
        state = apply_shift(state);
        if (losses.enabled) {
            state = scale_amplitudes(state, losses.eta_h * losses.eta_eom,
                                     losses.eta_v * losses.eta_eom);
        }
        record.step_tables.push_back(probabilities(state));
        record.raw_norms.push_back(state.squared_norm());
    }
    record.final_state = state;
    return record;
}

double Chessboard::at_step_position(int step_label, int position) const {
    for (std::size_t r = 0; r < step_labels.size(); ++r) {
        if (step_labels[r] != step_label) continue;
        for (std::size_t c = 0; c < positions.size(); ++c) {
            if (positions[c] == position) return prob[r][c];
        }
        return 0.0;
    }
    throw std::out_of_range("Chessboard: no row for step " + std::to_string(step_label));
}

double Chessboard::mean_position(int step_label) const {
    for (std::size_t r = 0; r < step_labels.size(); ++r) {
        if (step_labels[r] != step_label) continue;
        double mean = 0.0;
        for (std::size_t c = 0; c < positions.size(); ++c) {
            mean += positions[c] * prob[r][c];
        }
        return mean;
    }
    throw std::out_of_range("Chessboard: no row for step " + std::to_string(step_label));
}

Chessboard chessboard(const RunRecord& record) {
    std::set<int> position_set;
    for (std::size_t n = 1; n < record.step_tables.size(); ++n) {
        for (const auto& row : record.step_tables[n].rows) {
            position_set.insert(row.position);
        }
    }
    Chessboard board;
    board.positions.assign(position_set.begin(), position_set.end());
    for (std::size_t n = 1; n < record.step_tables.size(); ++n) {
        board.step_labels.push_back(static_cast<int>(n) + record.step_offset);
        std::vector<double> row(board.positions.size(), 0.0);
        for (const auto& entry : record.step_tables[n].rows) {
            const auto it = std::lower_bound(board.positions.begin(), board.positions.end(),
                                             entry.position);
            row[static_cast<std::size_t>(it - board.positions.begin())] =
                entry.p_h + entry.p_v;
        }
        board.prob.push_back(std::move(row));
    }
    return board;
}

}  // namespace qwalk
