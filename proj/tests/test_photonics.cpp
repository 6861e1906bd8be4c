#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "qwalk/photonics.hpp"

using namespace qwalk;

TEST_CASE("timing overlap constraint with the measured scales") {
    const TimingConfig t = TimingConfig::reference_values();
    const TimingCheck ok = validate_timings(t, 13);
    CHECK(ok.ok);
    CHECK(ok.max_step == 13);
    CHECK(ok.multiples == 14);
    CHECK_FALSE(validate_timings(t, 14).ok);  // 15 * 46.5 ns = 697.5 ns > 685 ns
}

TEST_CASE("timing boundary case") {
    const TimingConfig t{1e-9, 10e-9, 1e-6};
    CHECK(validate_timings(t, 8).ok);  // 9 * 1 ns < 10 ns
    CHECK_FALSE(validate_timings(t, 9).ok);
    CHECK(validate_timings(t, 8).max_step == 8);
    CHECK_THROWS_AS(validate_timings({5e-9, 4e-9, 1e-6}, 1), std::invalid_argument);
}

TEST_CASE("arrival times are distinct over admissible slots") {
    const TimingConfig t = TimingConfig::reference_values();
    CHECK(arrival_time(0, 0, t) == 0.0);
    CHECK(arrival_time(1, 1, t) == doctest::Approx(731.5e-9).epsilon(1e-12));
    CHECK(arrival_time(2, 0, t) == doctest::Approx(1370e-9).epsilon(1e-12));

    std::set<double> seen;
    for (int n = 0; n <= 13; ++n) {
        for (int k = 0; k <= n; ++k) {
            const double at = arrival_time(n, k, t);
            CHECK(!seen.count(at));
            seen.insert(at);
        }
    }
    CHECK_THROWS_AS(arrival_time(14, 0, t), std::invalid_argument);
    CHECK_THROWS_AS(arrival_time(3, 4, t), std::invalid_argument);
}

TEST_CASE("photon numbers at the measured operating point") {
    PhotonBudget b = PhotonBudget::reference_values();
    b.concentrate = true;
    CHECK(std::abs(photon_number(b, 3) - 1.12) <= 0.01);
    CHECK(photon_number(b, 3) == doctest::Approx(1.117796849593496).epsilon(1e-12));
    CHECK(std::abs(photon_number(b, 5) - 0.263) <= 0.005);
    CHECK(photon_number(b, 5) == doctest::Approx(0.2629337639456301).epsilon(1e-12));
    CHECK_THROWS_AS(photon_number(b, 0), std::invalid_argument);
}

TEST_CASE("lossless loop keeps the per-pulse photon number flat") {
    PhotonBudget b = PhotonBudget::reference_values();
    b.l_rt = 1.0;
    b.l_bs = 1.0;
    b.r_in = 0.999999;  // reflectivities live in the open interval
    b.r_out = 0.999999;
    b.concentrate = true;
    const double first = photon_number(b, 1);
    for (int n = 2; n <= 10; ++n) {
        CHECK(photon_number(b, n) == doctest::Approx(first).epsilon(1e-12));
    }
}

TEST_CASE("photon number decreases strictly under loss") {
    PhotonBudget b = PhotonBudget::reference_values();
    b.concentrate = true;
    for (int n = 1; n < 10; ++n) {
        CHECK(photon_number(b, n + 1) < photon_number(b, n));
    }
    // the position-splitting factor only accelerates the decay
    b.concentrate = false;
    for (int n = 1; n < 10; ++n) {
        CHECK(photon_number(b, n + 1) < photon_number(b, n));
    }
}

TEST_CASE("multi-photon probability closed form") {
    CHECK(multi_photon_probability(0.0) == 0.0);
    CHECK(multi_photon_probability(1.12) == doctest::Approx(0.30828683539915624).epsilon(1e-12));
    CHECK(multi_photon_probability(0.263) == doctest::Approx(0.0290789836960047).epsilon(1e-12));
    CHECK_THROWS_AS(multi_photon_probability(-0.1), std::invalid_argument);
}

TEST_CASE("multi-photon probability is increasing with range [0, 1)") {
    double prev = -1.0;
    for (double mean = 0.0; mean < 30.0; mean += 0.25) {
        const double p = multi_photon_probability(mean);
        CHECK(p >= 0.0);
        CHECK(p < 1.0);
        CHECK(p > prev);
        prev = p;
    }
    CHECK(multi_photon_probability(60.0) > 1.0 - 1e-12);
}

TEST_CASE("optimal outcoupling at the measured step count") {
    const PhotonBudget b = PhotonBudget::reference_values();
    const OutcouplingResult r13 = optimal_outcoupling(b, 13);
    CHECK(r13.argmax >= 0.06);
    CHECK(r13.argmax <= 0.10);
    CHECK(r13.analytic_reference == doctest::Approx(1.0 / 14.0).epsilon(1e-12));

    // with no (1-r)^(n-1) penalty the maximand is monotone: argmax caps at 1
    const OutcouplingResult r1 = optimal_outcoupling(b, 1);
    CHECK(r1.argmax == doctest::Approx(1.0));
    CHECK(r1.analytic_reference == doctest::Approx(0.5));
}

TEST_CASE("attainable step counts") {
    CHECK(attainable_steps(0.485, 40.0) == 12);
    CHECK(attainable_steps(0.485, 80.0) == 25);
    CHECK(attainable_steps(1.0, 40.0, 500) == 500);  // lossless: configured cap
    CHECK(attainable_steps(0.5, 0.0) == 0);

    // monotone in the dynamic range, with the floor-effect doubling bound
    for (double loss : {0.3, 0.485, 0.7, 0.9}) {
        int prev = -1;
        for (double db : {10.0, 20.0, 40.0, 80.0}) {
            const int n = attainable_steps(loss, db);
            CHECK(n >= prev);
            prev = n;
        }
        for (double db : {10.0, 20.0, 40.0}) {
            CHECK(attainable_steps(loss, 2.0 * db) >= 2 * attainable_steps(loss, db) - 1);
        }
    }
    CHECK_THROWS_AS(attainable_steps(0.0, 40.0), std::invalid_argument);
    CHECK_THROWS_AS(attainable_steps(0.5, -1.0), std::invalid_argument);
}

TEST_CASE("APD damage threshold flag") {
    // measured parameters: ~4.8 photons per pulse at n=1, 1e5 pulses/s
    PhotonBudget hot = PhotonBudget::reference_values();
    hot.concentrate = true;
    CHECK(damage_threshold_exceeded(hot));

    PhotonBudget cold = hot;
    cold.p_laser *= 1e-3;  // ND-filtered input
    CHECK_FALSE(damage_threshold_exceeded(cold));
}
