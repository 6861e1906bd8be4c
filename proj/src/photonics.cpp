#include "qwalk/photonics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qwalk {

void TimingConfig::validate() const {
    if (!(0.0 < tau_pos && tau_pos < tau_rt && tau_rt < tau_rep)) {
        throw std::invalid_argument("TimingConfig: need 0 < tau_pos < tau_rt < tau_rep");
    }
}

TimingCheck validate_timings(const TimingConfig& t, int max_step) {
    t.validate();
    const double ratio = t.tau_rt / t.tau_pos;
    // eps guards against representation error at exact integer ratios
    int multiples = static_cast<int>(std::floor(ratio + 1e-9));
    int max_admissible = static_cast<int>(std::ceil(ratio - 1e-9)) - 2;
    // correct against the strict inequality directly
    while ((max_admissible + 2) * t.tau_pos < t.tau_rt) ++max_admissible;
    while (max_admissible >= 0 && !((max_admissible + 1) * t.tau_pos < t.tau_rt)) {
        --max_admissible;
    }
    return {(max_step + 1) * t.tau_pos < t.tau_rt, max_admissible, multiples};
}

double arrival_time(int step, int position_index, const TimingConfig& t) {
    if (step < 0) throw std::invalid_argument("arrival_time: step must be >= 0");
    if (position_index < 0 || position_index > step) {
        throw std::invalid_argument("arrival_time: position index " +
                                    std::to_string(position_index) + " outside [0, " +
                                    std::to_string(step) + "]");
    }
    if (!validate_timings(t, step).ok) {
        throw std::invalid_argument("arrival_time: step " + std::to_string(step) +
                                    " violates the overlap constraint (m+1)*tau_pos < tau_rt");
    }
    return step * t.tau_rt + position_index * t.tau_pos;
}

void PhotonBudget::validate() const {
    auto in_open = [](double v) { return v > 0.0 && v < 1.0; };
    auto in_half = [](double v) { return v > 0.0 && v <= 1.0; };
    if (!(p_laser > 0.0)) throw std::invalid_argument("PhotonBudget: p_laser must be > 0");
    if (!(e_photon > 0.0)) throw std::invalid_argument("PhotonBudget: e_photon must be > 0");
    if (!(f_rep > 0.0)) throw std::invalid_argument("PhotonBudget: f_rep must be > 0");
    if (!in_open(r_in)) throw std::invalid_argument("PhotonBudget: r_in must be in (0, 1)");
    if (!in_open(r_out)) throw std::invalid_argument("PhotonBudget: r_out must be in (0, 1)");
    if (!in_half(l_rt)) throw std::invalid_argument("PhotonBudget: l_rt must be in (0, 1]");
    if (!in_half(l_bs)) throw std::invalid_argument("PhotonBudget: l_bs must be in (0, 1]");
}

double photon_number(const PhotonBudget& b, int n) {
    if (n < 1) throw std::invalid_argument("photon_number: n must be >= 1");
    b.validate();
    const double per_pulse = b.p_laser / (b.e_photon * b.f_rep);
    double value = per_pulse * b.r_out * b.r_in * std::pow(b.l_rt, n) *
                   std::pow(b.l_bs, n - 1);
    if (!b.concentrate) value /= static_cast<double>(n + 1);
    return value;
}

double multi_photon_probability(double mean) {
    if (mean < 0.0) throw std::invalid_argument("multi_photon_probability: mean must be >= 0");
    return 1.0 - std::exp(-mean) * (1.0 + mean);
}

OutcouplingResult optimal_outcoupling(const PhotonBudget& b, int n) {
    if (n < 1) throw std::invalid_argument("optimal_outcoupling: n must be >= 1");
    b.validate();
    // Detector photons as a function of r, with the loop loss tied to the
    // outcoupler transmission: f(r) = r * (l_bs (1 - r))^(n-1) * const.
    // Unimodal on [0, 1]; golden-section search, bounds included.
    auto f = [&](double r) {
        return r * std::pow(b.l_bs * (1.0 - r), n - 1);
    };
    double lo = 0.0, hi = 1.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(x1);
        }
    }
    double argmax = 0.5 * (lo + hi);
    // saturated maximand (n = 1): report the feasibility bound exactly
    if (f(1.0) >= f(argmax)) argmax = 1.0;
    return {argmax, 1.0 / (n + 1.0)};
}

int attainable_steps(double per_roundtrip_loss, double dynamic_range_db, int cap) {
    if (!(per_roundtrip_loss > 0.0) || per_roundtrip_loss > 1.0) {
        throw std::invalid_argument("attainable_steps: loss must be in (0, 1]");
    }
    if (dynamic_range_db < 0.0) {
        throw std::invalid_argument("attainable_steps: dynamic range must be >= 0 dB");
    }
    const double floor_level = std::pow(10.0, -dynamic_range_db / 10.0);
    if (per_roundtrip_loss >= 1.0) return cap;
    int n = static_cast<int>(std::floor(dynamic_range_db /
                                        (10.0 * std::log10(1.0 / per_roundtrip_loss))));
    while (std::pow(per_roundtrip_loss, n + 1) >= floor_level) ++n;
    while (n > 0 && std::pow(per_roundtrip_loss, n) < floor_level) --n;
    return std::min(n, cap);
}

bool damage_threshold_exceeded(const PhotonBudget& b) {
    return photon_number(b, 1) * b.f_rep > 1e5;
}

}  // namespace qwalk
