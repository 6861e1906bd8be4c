#include "qwalk/walk_state.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

WalkState WalkState::localized(int x0, const CoinState& coin) {
    if (std::abs(coin.squared_norm() - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "WalkState::localized: coin state is not normalized (|h|^2+|v|^2 = " +
            std::to_string(coin.squared_norm()) + ")");
    }
    WalkState s;
    s.amplitudes_[x0] = coin;
    s.step_ = 0;
    s.origin_ = x0;
    return s;
}

WalkState WalkState::from_amplitudes(AmplitudeMap amplitudes, int step, int origin) {
    WalkState s;
    for (auto& [x, a] : amplitudes) {
        if (a.h != complexd{0.0, 0.0} || a.v != complexd{0.0, 0.0}) {
            s.amplitudes_.emplace(x, a);
        }
    }
    s.step_ = step;
    s.origin_ = origin;
    return s;
}

double WalkState::squared_norm() const {
    double n = 0.0;
    for (const auto& [x, a] : amplitudes_) n += a.squared_norm();
    return n;
}

CoinState WalkState::at(int position) const {
    auto it = amplitudes_.find(position);
    return it == amplitudes_.end() ? CoinState{} : it->second;
}

WalkState apply_shift(const WalkState& state) {
    WalkState::AmplitudeMap out;
    for (const auto& [x, a] : state.amplitudes()) {
        if (a.h != complexd{0.0, 0.0}) out[x + 1].h += a.h;
        if (a.v != complexd{0.0, 0.0}) out[x - 1].v += a.v;
    }
    return WalkState::from_amplitudes(std::move(out), state.step() + 1, state.origin());
}

WalkState apply_coin_field(const WalkState& state,
                           const std::function<CoinOperator(int)>& coin_of) {
    WalkState::AmplitudeMap out;
    for (const auto& [x, a] : state.amplitudes()) {
        const CoinOperator m = coin_of(x);
        if (!m.is_unitary(1e-10)) {
            throw std::invalid_argument("apply_coin_field: operator at position " +
                                        std::to_string(x) + " is not unitary");
        }
        CoinState b;
        b.h = m.m00 * a.h + m.m01 * a.v;
        b.v = m.m10 * a.h + m.m11 * a.v;
        out[x] = b;
    }
    return WalkState::from_amplitudes(std::move(out), state.step(), state.origin());
}

WalkState scale_amplitudes(const WalkState& state, double h_factor, double v_factor) {
    WalkState::AmplitudeMap out;
    for (const auto& [x, a] : state.amplitudes()) {
        out[x] = CoinState{a.h * h_factor, a.v * v_factor};
    }
    return WalkState::from_amplitudes(std::move(out), state.step(), state.origin());
}

double ProbabilityTable::total() const {
    double t = 0.0;
    for (const auto& r : rows) t += r.p_h + r.p_v;
    return t;
}

double ProbabilityTable::probability_at(int position) const {
    double t = 0.0;
    for (const auto& r : rows) {
        if (r.position == position) t += r.p_h + r.p_v;
    }
    return t;
}

ProbabilityTable probabilities(const WalkState& state) {
    const double n = state.squared_norm();
    if (n <= 0.0) {
        throw std::invalid_argument("probabilities: zero-norm state");
    }
    ProbabilityTable table;
    table.rows.reserve(state.amplitudes().size());
    for (const auto& [x, a] : state.amplitudes()) {
        table.rows.push_back({state.step(), x, std::norm(a.h) / n, std::norm(a.v) / n});
    }
    return table;
}

double max_difference_up_to_phase(const WalkState& a, const WalkState& b) {
    // overlap-maximizing alignment phase: arg <b|a>
    complexd inner{0.0, 0.0};
    for (const auto& [x, aa] : a.amplitudes()) {
        const CoinState bb = b.at(x);
        inner += std::conj(bb.h) * aa.h + std::conj(bb.v) * aa.v;
    }
    complexd phase{1.0, 0.0};
    if (std::abs(inner) > 0.0) phase = inner / std::abs(inner);

    double d = 0.0;
    auto visit = [&](int x) {
        const CoinState aa = a.at(x);
        const CoinState bb = b.at(x);
        d = std::max(d, std::abs(aa.h - phase * bb.h));
        d = std::max(d, std::abs(aa.v - phase * bb.v));
    };
    for (const auto& [x, _] : a.amplitudes()) visit(x);
    for (const auto& [x, _] : b.amplitudes()) visit(x);
    return d;
}

}  // namespace qwalk
