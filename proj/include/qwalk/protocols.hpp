#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/engine.hpp"
#include "qwalk/schedule.hpp"

namespace qwalk {

/// In-loop preparation of a 4-position input state over {-3,-1,1,3}.
struct PrepVariant {
    enum class Tag { A_VVHH, B_VHVH };

    Tag tag;
    Schedule schedule;         // 3 steps over {qwp-, T}
    WalkState expected_state;  // reference amplitudes, global phase included
};

/// A: (qwp-, qwp-, T) -> (1/2)(-i|-3,V> - i|-1,V> - |1,H> + |3,H>)
/// B: (qwp-, T, qwp-) -> (1/2)(-i|-3,V> - |-1,H> - i|1,V> + |3,H>)
PrepVariant prep_schedule(PrepVariant::Tag tag);

/// One period of a {T, R} program routing any polarization state from source
/// to target and back, phases compensated (four reflections per component).
struct TransferScheme {
    int period;
    int source;
    int target;
    /// (step in 1..period, position) -> true for R; unlisted cells are T.
    std::map<std::pair<int, int>, bool> cells;

    /// Periodic repetition as a runnable schedule.
    Schedule to_schedule(int periods) const;
    std::string to_dsl(int periods = 1) const;

    /// Reflections along the deterministic H and V component paths over one
    /// period, forward (from source) or return (from target).
    std::pair<int, int> reflection_counts(bool from_target = false) const;
};

/// Enumerate all {T, R} programs (over the cells the component paths visit)
/// for which |source,H> and |source,V> arrive at target after `period` steps
/// with their original polarization and total phase +1, and which map the
/// target back to the source under the same period (the alternation the
/// scheme type requires). Empty result is a valid outcome. period <= 8.
std::vector<TransferScheme> search_transfer_schedules(int period, int source, int target);

/// Canonical pick among search results: lexicographically smallest sorted list
/// of R cells. Returns nullptr for an empty list.
const TransferScheme* canonical_scheme(const std::vector<TransferScheme>& schemes);

/// Canonical scheme: search result with the lexicographically smallest sorted
/// list of R cells. period 5 transfers 0 -> 1, period 6 transfers 0 -> -2.
TransferScheme transfer_scheme(int period);

struct TransferObservation {
    int step;
    int position;
    DensityMatrix rho;
    double fidelity;
};

/// Run `periods` repetitions of the scheme on rho_in and report the
/// polarization state at the expected position after each period, with its
/// fidelity to rho_in. Lossless evolution gives fidelity 1 exactly.
std::vector<TransferObservation> verify_transfer(
    const TransferScheme& scheme, const DensityMatrix& rho_in, int periods,
    const LossModel& losses = LossModel::lossless());

}  // namespace qwalk
