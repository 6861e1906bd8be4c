#pragma once

namespace qwalk {

/// Time-multiplexing scales: position spacing, roundtrip spacing, experiment
/// repetition period (all seconds, 0 < tau_pos < tau_rt < tau_rep).
struct TimingConfig {
    double tau_pos;
    double tau_rt;
    double tau_rep;

    /// reference setup: 46.5 ns position spacing, 685 ns roundtrip, 50 kHz repetition
    static TimingConfig reference_values() { return {46.5e-9, 685e-9, 20e-6}; }

    void validate() const;
};

struct TimingCheck {
    bool ok;        // (max_step + 1) * tau_pos < tau_rt for the requested step
    int max_step;   // largest admissible step without boundaries
    int multiples;  // floor(tau_rt / tau_pos)
};

/// Unambiguous arrival-time assignment requires (m+1)*tau_pos < tau_rt.
TimingCheck validate_timings(const TimingConfig& t, int max_step);

/// Arrival time of position index k (0..n) within step n: n*tau_rt + k*tau_pos.
/// Injective over admissible (n, k); throws when the overlap constraint fails.
double arrival_time(int step, int position_index, const TimingConfig& t);

/// Parameters of the detector photon-number estimate.
struct PhotonBudget {
    double p_laser;    // W, initial pulse power before the incoupler
    double e_photon;   // J, single photon energy
    double f_rep;      // Hz
    double r_in;       // incoupler reflectivity in (0, 1)
    double r_out;      // outcoupler reflectivity in (0, 1)
    double l_rt;       // roundtrip loss factor until the outcoupler, (0, 1]
    double l_bs;       // outcoupler-to-loop loss factor, (0, 1]
    bool concentrate = false;  // upper bound: all power at one position

    static PhotonBudget reference_values() {
        return {1.67e-9, 2.46e-19, 1e5, 0.002, 0.07, 0.5, 0.97, false};
    }

    void validate() const;
};

/// Expected photons per pulse at the detectors after n roundtrips:
/// P_L/(E_phot f_rep) * R_out R_in * L_RT^n L_BS^(n-1) * (concentrate ? 1 : 1/(n+1)).
double photon_number(const PhotonBudget& b, int n);

/// Poissonian pulse statistics: P(N >= 2) = 1 - e^{-mean} (1 + mean).
double multi_photon_probability(double mean);

struct OutcouplingResult {
    double argmax;              // numeric maximizer of the r_out-dependent model
    double analytic_reference;  // 1/(n+1)
};

/// Maximize detector photons over r_out with the loop loss depending on the
/// outcoupler: l_bs(r_out) = l_bs * (1 - r_out). For n = 1 the maximand is
/// monotone in r_out and the argmax saturates at the feasibility bound 1.
OutcouplingResult optimal_outcoupling(const PhotonBudget& b, int n);

/// Largest n with loss^n >= 10^(-dynamic_range_db/10); returns `cap` when the
/// signal never falls below the detector floor (loss = 1).
int attainable_steps(double per_roundtrip_loss, double dynamic_range_db, int cap = 1000);

/// APD damage check: photons/s at the first roundtrip above 1e5.
bool damage_threshold_exceeded(const PhotonBudget& b);

}  // namespace qwalk
