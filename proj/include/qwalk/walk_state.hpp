#pragma once

#include <functional>
#include <map>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Coin (polarization) amplitudes at one lattice site. |h|^2 + |v|^2 may be
/// below 1 under the loss model; it is 1 for a normalized pure coin state.
struct CoinState {
    complexd h{0.0, 0.0};
    complexd v{0.0, 0.0};

    double squared_norm() const { return std::norm(h) + std::norm(v); }
};

/// Walker state: sparse map position -> coin amplitudes, plus the step counter
/// and the origin. Invariants (lossless evolution):
///   - total squared norm 1 within 1e-12
///   - every occupied x has (x - origin - step) even
///   - at most step + 1 occupied positions
class WalkState {
public:
    using AmplitudeMap = std::map<int, CoinState>;

    WalkState() = default;

    /// Single occupied site x0 with the given coin amplitudes; the coin must be
    /// normalized to 1 within 1e-12.
    static WalkState localized(int x0, const CoinState& coin);

    /// Assemble a state from explicit amplitudes (used by protocol fixtures and
    /// the engine). Exact-zero entries are dropped; no normalization is imposed.
    static WalkState from_amplitudes(AmplitudeMap amplitudes, int step, int origin);

    const AmplitudeMap& amplitudes() const { return amplitudes_; }
    int step() const { return step_; }
    int origin() const { return origin_; }

    double squared_norm() const;
    CoinState at(int position) const;  // zero amplitudes if unoccupied
    bool occupied(int position) const { return amplitudes_.count(position) != 0; }

private:
    AmplitudeMap amplitudes_;
    int step_ = 0;
    int origin_ = 0;
};

/// Step operator of the 1-d line: h amplitude at x moves to x+1, v to x-1.
/// Increments the step counter; norm is unchanged.
WalkState apply_shift(const WalkState& state);

/// Left-multiply each occupied site's coin state by coin_of(position).
/// Every supplied operator must be unitary within 1e-10; step unchanged.
WalkState apply_coin_field(const WalkState& state,
                           const std::function<CoinOperator(int)>& coin_of);

/// Multiply h amplitudes by h_factor and v amplitudes by v_factor (loss model).
WalkState scale_amplitudes(const WalkState& state, double h_factor, double v_factor);

struct ProbabilityRow {
    int step = 0;
    int position = 0;
    double p_h = 0.0;
    double p_v = 0.0;
};

/// Renormalized occupation probabilities. Per-step rows sum to 1.
struct ProbabilityTable {
    std::vector<ProbabilityRow> rows;

    double total() const;
    double probability_at(int position) const;  // p_h + p_v, 0 if absent
};

/// Detector read-out: P_H(x) = |h_x|^2 / N, P_V(x) = |v_x|^2 / N with N the
/// total squared norm (the per-step renormalization of a lossy loop).
/// Throws on a zero-norm state.
ProbabilityTable probabilities(const WalkState& state);

/// Largest entry-wise amplitude difference after aligning b to a with the
/// overlap-maximizing global phase (phase = arg sum conj(b)*a).
double max_difference_up_to_phase(const WalkState& a, const WalkState& b);

}  // namespace qwalk
