#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qwalk/engine.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

/// 2x2 polarization density matrix in the (H, V) basis. Construction validates
/// hermiticity (1e-10), unit trace (1e-9) and eigenvalues >= -1e-10.
class DensityMatrix {
public:
    DensityMatrix() : m00_(0.5), m01_(0.0), m10_(0.0), m11_(0.5) {}

    static DensityMatrix from_entries(complexd m00, complexd m01, complexd m10,
                                      complexd m11);

    /// Renormalize by the trace first (tabulated matrices may round to trace != 1).
    static DensityMatrix from_unnormalized(complexd m00, complexd m01, complexd m10,
                                           complexd m11);

    static DensityMatrix pure(const CoinState& coin);

    complexd m00() const { return m00_; }
    complexd m01() const { return m01_; }
    complexd m10() const { return m10_; }
    complexd m11() const { return m11_; }

    double trace_real() const { return m00_.real() + m11_.real(); }
    double determinant_real() const;
    /// eigenvalues, descending
    std::pair<double, double> eigenvalues() const;

private:
    complexd m00_, m01_, m10_, m11_;
};

double max_entry_difference(const DensityMatrix& a, const DensityMatrix& b);

/// Half the L1 distance between two normalized polarization-resolved
/// distributions; range [0, 1]. Inputs must each sum to 1 within 1e-9.
double distance(const ProbabilityTable& p, const ProbabilityTable& q);

/// Arithmetic mean of per-step distances over steps [step_lo, step_hi]
/// (inclusive, record-internal step indices). Throws on an empty range.
double mean_distance(const RunRecord& a, const RunRecord& b, int step_lo, int step_hi);

/// Uhlmann fidelity (tr sqrt(sqrt(rho0) rhox sqrt(rho0)))^2 via the qubit
/// closed form tr(rho0 rhox) + 2 sqrt(det rho0 det rhox); symmetric, [0, 1].
double fidelity(const DensityMatrix& rho0, const DensityMatrix& rhox);

/// Conditional polarization state at an occupied position of a pure walk state.
DensityMatrix conditional_density(const WalkState& state, int position);

/// Measured counts in the three tomography bases H/V, D/A, R/L.
/// Oracle (infinite-shot) mode stores exact probabilities instead of counts.
struct TomographyCounts {
    double h = 0, v = 0;
    double d = 0, a = 0;
    double r = 0, l = 0;
};

/// Per-basis binomial sampling from the exact conditional state at `position`;
/// deterministic for a fixed seed. Throws when the position is unoccupied.
TomographyCounts simulate_tomography(const WalkState& state, int position, long shots,
                                     std::uint64_t seed);

/// Infinite-shot limit: exact outcome probabilities, no sampling.
TomographyCounts exact_tomography(const WalkState& state, int position);

/// Stokes inversion rho = (I + s1 sx + s2 sy + s3 sz)/2 from relative
/// frequencies, projected to the nearest valid state (eigenvalue clipping and
/// trace renormalization) when sampling noise makes it unphysical.
DensityMatrix reconstruct(const TomographyCounts& counts);

/// Perturbation half-widths of the Monte Carlo scan (uniform, centered).
struct PerturbationSpec {
    double coupling_sigma = 0.015;        // relative, applies to eta_h and eta_v
    double eom_transmission_sigma = 0.02; // relative, applies to eta_eom
    double coin_angle_sigma_deg = 0.1;    // absolute degrees, waveplate angles
    int trials = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

/// One run configuration the Monte Carlo scan perturbs.
struct SimConfig {
    WalkState initial;
    Schedule schedule;
    LossModel losses;

    /// Monte Carlo base: symmetric couplings with headroom for +1.5% draws.
    static LossModel perturbation_base() { return {0.97, 0.97, 0.98, true}; }
};

/// Trial `index` of the scan: draw coupling factors, EOM transmission and one
/// shared coin-angle offset, then evolve. Deterministic in (spec.seed, index).
RunRecord perturbed_run(const SimConfig& config, const PerturbationSpec& spec, int index);

struct ErrorBarRow {
    int step;
    int position;
    char polarization;  // 'H' or 'V'
    double mean;
    double stddev;
};

struct ErrorBarTable {
    std::vector<ErrorBarRow> rows;
    int trials = 0;
    std::uint64_t seed = 0;

    const ErrorBarRow* find(int step, int position, char polarization) const;
};

/// Sample mean and standard deviation of the per-(step, position, polarization)
/// probabilities over spec.trials perturbed runs. Compensated accumulation keeps
/// the result permutation-invariant to 1e-12.
ErrorBarTable monte_carlo_errorbars(const SimConfig& config, const PerturbationSpec& spec);

/// P_H(x0) + P_V(x0) at the given record step.
double revival_probability(const RunRecord& record, int x0, int step);

}  // namespace qwalk
