#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qwalk/analysis.hpp"
#include "qwalk/engine.hpp"

using namespace qwalk;
namespace {
const WalkState kHInput = WalkState::localized(0, {complexd{1.0, 0.0}, {}});
const WalkState kVInput = WalkState::localized(0, {{}, complexd{1.0, 0.0}});
}  // namespace

TEST_CASE("ballistic transmission") {
    const RunRecord r = evolve(kHInput, Schedule(5, CoinSpec::transmission()));
    CHECK(r.recorded_steps() == 5);
    CHECK(r.table_at(0).probability_at(0) == doctest::Approx(1.0));
    REQUIRE(r.table_at(5).rows.size() == 1);
    CHECK(r.table_at(5).rows[0].position == 5);
    CHECK(r.table_at(5).rows[0].p_h == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.table_at(5).rows[0].p_v == 0.0);
}

TEST_CASE("three-step Hadamard distribution") {
    const RunRecord r = evolve(kHInput, Schedule(3, CoinSpec::hadamard()));
    const ProbabilityTable& t = r.table_at(3);
    CHECK(t.probability_at(-3) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(t.probability_at(-1) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(t.probability_at(1) == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(t.probability_at(3) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("lossless norm conservation over 25 steps") {
    oracles::TestRng rng(7);
    for (int trial = 0; trial < 8; ++trial) {
        const Schedule schedule = oracles::random_schedule(rng, 25);
        const RunRecord r =
            evolve(WalkState::localized(0, oracles::random_pure_coin(rng)), schedule);
        for (double n : r.raw_norms) CHECK(std::abs(n - 1.0) < 1e-12);
    }
}

TEST_CASE("mirror symmetry of the balanced-coin walk") {
    const Schedule schedule(20, CoinSpec::qwp_plus());
    const RunRecord from_h = evolve(kHInput, schedule);
    const RunRecord from_v = evolve(kVInput, schedule);
    for (int n = 0; n <= 20; ++n) {
        for (const auto& row : from_h.table_at(n).rows) {
            // P_V(-x) of the V run equals P_H(x) of the H run
            double pv = 0.0;
            for (const auto& vrow : from_v.table_at(n).rows) {
                if (vrow.position == -row.position) pv = vrow.p_v;
            }
            CHECK(std::abs(pv - row.p_h) < 1e-12);
        }
    }
}

TEST_CASE("uniform loss cancels in the displayed probabilities") {
    const Schedule schedule = finite_graph_schedule(3, CoinSpec::qwp_plus(), 15);
    const RunRecord ideal = evolve(kHInput, schedule);
    const LossModel uniform{0.93, 0.93, 0.98, true};
    const RunRecord lossy = evolve(kHInput, schedule, uniform);
    for (int n = 0; n <= 15; ++n) {
        CHECK(distance(ideal.table_at(n), lossy.table_at(n)) < 1e-12);
    }
    // raw norms do decrease
    CHECK(lossy.raw_norms[15] < 1e-1);
    for (std::size_t i = 1; i < lossy.raw_norms.size(); ++i) {
        CHECK(lossy.raw_norms[i] <= lossy.raw_norms[i - 1] + 1e-15);
    }
}

TEST_CASE("asymmetric loss shifts the read-out") {
    const Schedule schedule(10, CoinSpec::qwp_plus());
    const RunRecord ideal = evolve(kHInput, schedule);
    const RunRecord skewed = evolve(kHInput, schedule, LossModel::reference_default());
    CHECK(mean_distance(ideal, skewed, 1, 10) > 0.0);
}

TEST_CASE("loss model validation") {
    CHECK_THROWS_AS(evolve(kHInput, Schedule(2, CoinSpec::transmission()),
                           LossModel{1.2, 1.0, 1.0, true}),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve(kHInput, Schedule(2, CoinSpec::transmission()),
                           LossModel{0.0, 1.0, 1.0, true}),
                    std::invalid_argument);
}

TEST_CASE("chessboard of a one-step balanced walk") {
    const RunRecord r = evolve(kHInput, Schedule(1, CoinSpec::hadamard()));
    const Chessboard board = chessboard(r);
    REQUIRE(board.prob.size() == 1);
    REQUIRE(board.positions.size() == 2);
    CHECK(board.prob[0][0] + board.prob[0][1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("finite-graph confinement is exact") {
    for (int b : {1, 3, 5}) {
        const Schedule schedule = finite_graph_schedule(b, CoinSpec::qwp_plus(), 25);
        const RunRecord r = evolve(kHInput, schedule);
        int max_occupied = 0;
        for (int n = 0; n <= 25; ++n) {
            int occupied = 0;
            for (const auto& row : r.table_at(n).rows) {
                CHECK(std::abs(row.position) <= b);  // zero amplitude beyond +-b
                if (row.p_h + row.p_v > 0.0) ++occupied;
            }
            max_occupied = std::max(max_occupied, occupied);
        }
        if (b == 3) CHECK(max_occupied == 4);
        if (b == 5) CHECK(max_occupied == 6);
        if (b == 1) CHECK(max_occupied <= 2);

        const Chessboard board = chessboard(r);
        for (int x : board.positions) CHECK(std::abs(x) <= b);
    }
}

TEST_CASE("unrestricted 36-degree walk drifts toward positive positions") {
    const RunRecord r = evolve(kHInput, Schedule(20, CoinSpec::qwp_at(36.0)));
    const Chessboard board = chessboard(r);
    CHECK(board.mean_position(20) > 0.0);
}

TEST_CASE("step-10 return probability of the bounded walk") {
    // regression for the revival feature: with R at +-3 the balanced-coin walk
    // concentrates back at the origin in step 10; the simulated peak is 0.8021
    const RunRecord r = evolve(kHInput, finite_graph_schedule(3, CoinSpec::qwp_plus(), 12));
    CHECK(revival_probability(r, 0, 10) == doctest::Approx(0.802111798569).epsilon(1e-9));
    // neighboring even steps are far lower: the peak sits at step 10
    CHECK(revival_probability(r, 0, 8) < 0.2);
    CHECK(revival_probability(r, 0, 12) < 0.8);
}

TEST_CASE("prep-style step offset shifts chessboard labels") {
    RunRecord r = evolve(kHInput, Schedule(5, CoinSpec::qwp_minus()));
    r.step_offset = -3;
    const Chessboard board = chessboard(r);
    CHECK(board.step_labels.front() == -2);
    CHECK(board.step_labels.back() == 2);
}
