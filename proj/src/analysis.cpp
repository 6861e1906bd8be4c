#include "qwalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qwalk/rng.hpp"

namespace qwalk {

namespace {

void validate_density(const complexd& m00, const complexd& m01, const complexd& m10,
                      const complexd& m11) {
    if (std::abs(m00.imag()) > 1e-10 || std::abs(m11.imag()) > 1e-10 ||
        std::abs(m01 - std::conj(m10)) > 1e-10) {
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-10");
    }
    const double tr = m00.real() + m11.real();
    if (std::abs(tr - 1.0) > 1e-9) {
        throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) +
                                    " != 1 within 1e-9");
    }
    // eigenvalues of a Hermitian 2x2: tr/2 +- sqrt(tr^2/4 - det)
    const double det = m00.real() * m11.real() - std::norm(m01);
    const double disc = std::max(0.0, tr * tr / 4.0 - det);
    const double lambda_min = tr / 2.0 - std::sqrt(disc);
    if (lambda_min < -1e-10) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                    std::to_string(lambda_min));
    }
}

}  // namespace

DensityMatrix DensityMatrix::from_entries(complexd m00, complexd m01, complexd m10,
                                          complexd m11) {
    validate_density(m00, m01, m10, m11);
    DensityMatrix rho;
    rho.m00_ = m00;
    rho.m01_ = m01;
    rho.m10_ = m10;
    rho.m11_ = m11;
    return rho;
}

DensityMatrix DensityMatrix::from_unnormalized(complexd m00, complexd m01, complexd m10,
                                               complexd m11) {
    const double tr = m00.real() + m11.real();
    if (!(tr > 0.0)) {
        throw std::invalid_argument("DensityMatrix: non-positive trace");
    }
    return from_entries(m00 / tr, m01 / tr, m10 / tr, m11 / tr);
}

DensityMatrix DensityMatrix::pure(const CoinState& coin) {
    const double n = coin.squared_norm();
    if (!(n > 0.0)) {
        throw std::invalid_argument("DensityMatrix::pure: zero coin state");
    }
    return from_entries(std::norm(coin.h) / n, coin.h * std::conj(coin.v) / n,
                        coin.v * std::conj(coin.h) / n, std::norm(coin.v) / n);
}

double DensityMatrix::determinant_real() const {
    return (m00_ * m11_ - m01_ * m10_).real();
}

std::pair<double, double> DensityMatrix::eigenvalues() const {
    const double tr = trace_real();
    const double disc = std::max(0.0, tr * tr / 4.0 - determinant_real());
    const double s = std::sqrt(disc);
    return {tr / 2.0 + s, tr / 2.0 - s};
}

double max_entry_difference(const DensityMatrix& a, const DensityMatrix& b) {
    double d = std::abs(a.m00() - b.m00());
    d = std::max(d, std::abs(a.m01() - b.m01()));
    d = std::max(d, std::abs(a.m10() - b.m10()));
    d = std::max(d, std::abs(a.m11() - b.m11()));
    return d;
}

namespace {

// collapse a table into position -> (p_h, p_v)
std::map<int, std::pair<double, double>> by_position(const ProbabilityTable& t) {
    std::map<int, std::pair<double, double>> m;
    for (const auto& row : t.rows) {
        auto& e = m[row.position];
        e.first += row.p_h;
        e.second += row.p_v;
    }
    return m;
}

}  // namespace

double distance(const ProbabilityTable& p, const ProbabilityTable& q) {
    if (std::abs(p.total() - 1.0) > 1e-9 || std::abs(q.total() - 1.0) > 1e-9) {
        throw std::invalid_argument("distance: distributions must be normalized");
    }
    const auto pm = by_position(p);
    const auto qm = by_position(q);
    double d = 0.0;
    auto add = [&](int x) {
        const auto pi = pm.count(x) ? pm.at(x) : std::pair<double, double>{0.0, 0.0};
        const auto qi = qm.count(x) ? qm.at(x) : std::pair<double, double>{0.0, 0.0};
        d += std::abs(pi.first - qi.first) + std::abs(pi.second - qi.second);
    };
    for (const auto& [x, _] : pm) add(x);
    for (const auto& [x, _] : qm) {
        if (!pm.count(x)) add(x);
    }
    return d / 2.0;
}

double mean_distance(const RunRecord& a, const RunRecord& b, int step_lo, int step_hi) {
    if (step_lo > step_hi) {
        throw std::invalid_argument("mean_distance: empty step range");
    }
    if (step_lo < 0 || step_hi > a.recorded_steps() || step_hi > b.recorded_steps()) {
        throw std::invalid_argument("mean_distance: step range not covered by both records");
    }
    double sum = 0.0;
    for (int n = step_lo; n <= step_hi; ++n) {
        sum += distance(a.table_at(n), b.table_at(n));
    }
    return sum / static_cast<double>(step_hi - step_lo + 1);
}

double fidelity(const DensityMatrix& rho0, const DensityMatrix& rhox) {
    // qubit closed form of (tr sqrt(sqrt(rho0) rhox sqrt(rho0)))^2;
    // equivalence to the matrix-root definition is oracle-checked in tests
    const complexd tr_prod = rho0.m00() * rhox.m00() + rho0.m01() * rhox.m10() +
                             rho0.m10() * rhox.m01() + rho0.m11() * rhox.m11();
    const double det0 = std::max(0.0, rho0.determinant_real());
    const double detx = std::max(0.0, rhox.determinant_real());
    const double f = tr_prod.real() + 2.0 * std::sqrt(det0 * detx);
    return std::clamp(f, 0.0, 1.0);
}

DensityMatrix conditional_density(const WalkState& state, int position) {
    if (!state.occupied(position)) {
        throw std::invalid_argument("conditional_density: position " +
                                    std::to_string(position) + " is unoccupied");
    }
    return DensityMatrix::pure(state.at(position));
}

namespace {

struct BasisProbabilities {
    double h, v, d, a, r, l;
};

BasisProbabilities basis_probabilities(const WalkState& state, int position) {
    if (!state.occupied(position)) {
        throw std::invalid_argument("tomography: position " + std::to_string(position) +
                                    " is unoccupied");
    }
    const CoinState c = state.at(position);
    const double n = c.squared_norm();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const complexd i{0.0, 1.0};
    // |D> = (|H>+|V>)/sqrt2, |A> = (|H>-|V>)/sqrt2,
    // |R> = (|H>+i|V>)/sqrt2, |L> = (|H>-i|V>)/sqrt2 (sigma_y eigenbasis)
    const double ph = std::norm(c.h) / n;
    const double pv = std::norm(c.v) / n;
    const double pd = std::norm(inv_sqrt2 * (c.h + c.v)) / n;
    const double pa = std::norm(inv_sqrt2 * (c.h - c.v)) / n;
    const double pr = std::norm(inv_sqrt2 * (c.h - i * c.v)) / n;
    const double pl = std::norm(inv_sqrt2 * (c.h + i * c.v)) / n;
    return {ph, pv, pd, pa, pr, pl};
}

}  // namespace

TomographyCounts simulate_tomography(const WalkState& state, int position, long shots,
                                     std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("simulate_tomography: shots must be >= 1");
    const BasisProbabilities p = basis_probabilities(state, position);
    SplitMix64 rng(derive_seed(seed, 0x746f6d6fULL));
    auto binomial = [&](double prob) {
        long k = 0;
        for (long s = 0; s < shots; ++s) {
            if (rng.uniform() < prob) ++k;
        }
        return static_cast<double>(k);
    };
    TomographyCounts counts;
    counts.h = binomial(p.h);
    counts.v = static_cast<double>(shots) - counts.h;
    counts.d = binomial(p.d);
    counts.a = static_cast<double>(shots) - counts.d;
    counts.r = binomial(p.r);
    counts.l = static_cast<double>(shots) - counts.r;
    return counts;
}

TomographyCounts exact_tomography(const WalkState& state, int position) {
    const BasisProbabilities p = basis_probabilities(state, position);
    return {p.h, p.v, p.d, p.a, p.r, p.l};
}

DensityMatrix reconstruct(const TomographyCounts& counts) {
    const double nz = counts.h + counts.v;
    const double nx = counts.d + counts.a;
    const double ny = counts.r + counts.l;
    if (!(nz > 0.0) || !(nx > 0.0) || !(ny > 0.0)) {
        throw std::invalid_argument("reconstruct: counts missing for one or more bases");
    }
    const double s1 = (counts.d - counts.a) / nx;
    const double s2 = (counts.r - counts.l) / ny;
    const double s3 = (counts.h - counts.v) / nz;

    // rho = (I + s1 sx + s2 sy + s3 sz)/2
    complexd m00{(1.0 + s3) / 2.0, 0.0};
    complexd m11{(1.0 - s3) / 2.0, 0.0};
    complexd m01{s1 / 2.0, -s2 / 2.0};
    complexd m10{s1 / 2.0, s2 / 2.0};

    // physicality projection: clip a negative eigenvalue, renormalize trace
    const double tr = 1.0;
    const double det = (m00 * m11 - m01 * m10).real();
    const double disc = std::max(0.0, tr * tr / 4.0 - det);
    const double lambda_minus = tr / 2.0 - std::sqrt(disc);
    if (lambda_minus < 0.0) {
        const double lambda_plus = tr / 2.0 + std::sqrt(disc);
        const double span = lambda_plus - lambda_minus;
        m00 = (m00 - lambda_minus) / span;
        m11 = (m11 - lambda_minus) / span;
        m01 = m01 / span;
        m10 = m10 / span;
    }
    return DensityMatrix::from_entries(m00, m01, m10, m11);
}

void PerturbationSpec::validate() const {
    if (coupling_sigma < 0.0 || eom_transmission_sigma < 0.0 || coin_angle_sigma_deg < 0.0) {
        throw std::invalid_argument("PerturbationSpec: sigmas must be >= 0");
    }
    if (trials < 1) throw std::invalid_argument("PerturbationSpec: trials must be >= 1");
}

RunRecord perturbed_run(const SimConfig& config, const PerturbationSpec& spec, int index) {
    spec.validate();
    SplitMix64 rng(derive_seed(spec.seed, static_cast<std::uint64_t>(index)));
    // fixed draw order: coupling H, coupling V, EOM transmission, coin angle
    const double du_h = rng.uniform_centered(spec.coupling_sigma);
    const double du_v = rng.uniform_centered(spec.coupling_sigma);
    const double du_eom = rng.uniform_centered(spec.eom_transmission_sigma);
    const double d_angle = rng.uniform_centered(spec.coin_angle_sigma_deg);

    LossModel losses = config.losses;
    losses.enabled = true;
    auto clamp_unit = [](double v) { return std::min(1.0, std::max(1e-12, v)); };
    losses.eta_h = clamp_unit(losses.eta_h * (1.0 + du_h));
    losses.eta_v = clamp_unit(losses.eta_v * (1.0 + du_v));
    losses.eta_eom = clamp_unit(losses.eta_eom * (1.0 + du_eom));

    const Schedule schedule = config.schedule.with_angle_perturbation(d_angle);
    RunRecord record = evolve(config.initial, schedule, losses);
    record.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(index));
    return record;
}

const ErrorBarRow* ErrorBarTable::find(int step, int position, char polarization) const {
    for (const auto& row : rows) {
        if (row.step == step && row.position == position &&
            row.polarization == polarization) {
            return &row;
        }
    }
    return nullptr;
}

ErrorBarTable monte_carlo_errorbars(const SimConfig& config, const PerturbationSpec& spec) {
    spec.validate();

    struct Kahan {
        double sum = 0.0, c = 0.0;
        void add(double x) {
            const double y = x - c;
            const double t = sum + y;
            c = (t - sum) - y;
            sum = t;
        }
    };
    struct Key {
        int step, position;
        char pol;
        auto operator<=>(const Key&) const = default;
    };
    std::map<Key, std::pair<Kahan, Kahan>> acc;  // (sum x, sum x^2)

    for (int t = 0; t < spec.trials; ++t) {
        const RunRecord record = perturbed_run(config, spec, t);
        for (int n = 0; n <= record.recorded_steps(); ++n) {
            for (const auto& row : record.table_at(n).rows) {
                auto& [s, s2] = acc[{n, row.position, 'H'}];
                s.add(row.p_h);
                s2.add(row.p_h * row.p_h);
                auto& [sv, sv2] = acc[{n, row.position, 'V'}];
                sv.add(row.p_v);
                sv2.add(row.p_v * row.p_v);
            }
        }
    }

    ErrorBarTable table;
    table.trials = spec.trials;
    table.seed = spec.seed;
    const double n = static_cast<double>(spec.trials);
    for (const auto& [key, sums] : acc) {
        const double mean = sums.first.sum / n;
        double stddev = 0.0;
        if (spec.trials >= 2) {
            const double var =
                std::max(0.0, (sums.second.sum - sums.first.sum * mean) / (n - 1.0));
            stddev = std::sqrt(var);
        }
        table.rows.push_back({key.step, key.position, key.pol, mean, stddev});
    }
    return table;
}

double revival_probability(const RunRecord& record, int x0, int step) {
    return record.table_at(step).probability_at(x0);
}

}  // namespace qwalk
