#include "qwalk/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qwalk {

namespace {

Schedule prep_program(PrepVariant::Tag tag) {
    // step with T in third (A) or second (B) place, qwp- elsewhere
    Schedule s(3, CoinSpec::qwp_minus());
    ScheduleOverride t_step;
    t_step.step_lo = t_step.step_hi = (tag == PrepVariant::Tag::A_VVHH) ? 3 : 2;
    t_step.all_positions = true;
    t_step.coin = CoinSpec::transmission();
    s.add_override(std::move(t_step));
    return s;
}

WalkState prep_expected(PrepVariant::Tag tag) {
    const complexd i{0.0, 1.0};
    WalkState::AmplitudeMap amp;
    if (tag == PrepVariant::Tag::A_VVHH) {
        amp[-3] = {0.0, -0.5 * i};
        amp[-1] = {0.0, -0.5 * i};
        amp[1] = {-0.5, 0.0};
        amp[3] = {0.5, 0.0};
    } else {
        amp[-3] = {0.0, -0.5 * i};
        amp[-1] = {-0.5, 0.0};
        amp[1] = {0.0, -0.5 * i};
        amp[3] = {0.5, 0.0};
    }
    return WalkState::from_amplitudes(std::move(amp), 3, 0);
}

}  // namespace

PrepVariant prep_schedule(PrepVariant::Tag tag) {
    return {tag, prep_program(tag), prep_expected(tag)};
}

Schedule TransferScheme::to_schedule(int periods) const {
    if (periods < 1) throw std::invalid_argument("TransferScheme: periods must be >= 1");
    Schedule s(period * periods, CoinSpec::transmission());
    for (const auto& [cell, is_r] : cells) {
        if (!is_r) continue;
        for (int k = 0; k < periods; ++k) {
            ScheduleOverride ov;
            ov.step_lo = ov.step_hi = cell.first + k * period;
            ov.positions = {cell.second};
            ov.coin = CoinSpec::reflection();
            s.add_override(std::move(ov));
        }
    }
    return s;
}

std::string TransferScheme::to_dsl(int periods) const {
    return to_schedule(periods).render();
}

namespace {

struct PathTrace {
    int final_position;
    int final_polarization;  // 0 = H, 1 = V
    int reflections;
};

// Follow one deterministic component through a fixed cell map (T default).
PathTrace trace_path(const std::map<std::pair<int, int>, bool>& cells, int period,
                     int start, int polarization) {
    int x = start;
    int p = polarization;
    int refl = 0;
    for (int step = 1; step <= period; ++step) {
        const auto it = cells.find({step, x});
        const bool is_r = (it != cells.end()) && it->second;
        if (is_r) {
            p = 1 - p;
            ++refl;
        }
        x += (p == 0) ? 1 : -1;
    }
    return {x, p, refl};
}

}  // namespace

std::pair<int, int> TransferScheme::reflection_counts(bool from_target) const {
    const int start = from_target ? target : source;
    return {trace_path(cells, period, start, 0).reflections,
            trace_path(cells, period, start, 1).reflections};
}

std::vector<TransferScheme> search_transfer_schedules(int period, int source, int target) {
    if (period < 1 || period > 8) {
        throw std::invalid_argument("search_transfer_schedules: period must be in [1, 8]");
    }

    // Four deterministic walkers share one (step, position) -> {T, R} map:
    // H and V forward from the source, H and V back from the target. DFS over
    // the undecided cells each walker meets; a walker succeeds when it lands
    // on its destination with the polarization it started with and phase
    // i^reflections = +1.
    struct Walker {
        int start, polarization, destination;
    };
    const Walker walkers[4] = {
        {source, 0, target}, {source, 1, target}, {target, 0, source}, {target, 1, source}};

    std::vector<TransferScheme> results;
    std::map<std::pair<int, int>, bool> cells;

    auto walk = [&](auto&& self, int widx, int step, int x, int p, int refl) -> void {
        if (step > period) {
            if (x != walkers[widx].destination || p != walkers[widx].polarization ||
                refl % 4 != 0) {
                return;
            }
            if (widx == 3) {
                results.push_back({period, source, target, cells});
                return;
            }
            const Walker& next = walkers[widx + 1];
            self(self, widx + 1, 1, next.start, next.polarization, 0);
            return;
        }
        const auto key = std::make_pair(step, x);
        const auto it = cells.find(key);
        if (it != cells.end()) {
            const int q = it->second ? 1 - p : p;
            self(self, widx, step + 1, x + (q == 0 ? 1 : -1), q,
                 refl + (it->second ? 1 : 0));
            return;
        }
        for (const bool choice : {false, true}) {
            cells[key] = choice;
            const int q = choice ? 1 - p : p;
            self(self, widx, step + 1, x + (q == 0 ? 1 : -1), q, refl + (choice ? 1 : 0));
            cells.erase(key);
        }
    };
    walk(walk, 0, 1, walkers[0].start, walkers[0].polarization, 0);

    // deterministic result order
    std::sort(results.begin(), results.end(),
              [](const TransferScheme& a, const TransferScheme& b) {
                  return a.cells < b.cells;
              });
    return results;
}

const TransferScheme* canonical_scheme(const std::vector<TransferScheme>& schemes) {
    if (schemes.empty()) return nullptr;
    auto r_cells = [](const TransferScheme& s) {
        std::vector<std::pair<int, int>> r;
        for (const auto& [cell, is_r] : s.cells) {
            if (is_r) r.push_back(cell);
        }
        return r;  // map iteration is already (step, position)-sorted
    };
    const TransferScheme* best = &schemes.front();
    auto best_r = r_cells(*best);
    for (const auto& s : schemes) {
        auto r = r_cells(s);
        if (r < best_r) {
            best = &s;
            best_r = std::move(r);
        }
    }
    return best;
}

TransferScheme transfer_scheme(int period) {
    // canonical schemes pinned as data (the lexicographically smallest search
    // results); a test regenerates them through search_transfer_schedules
    if (period == 5) {
        TransferScheme s{5, 0, 1, {}};
        for (auto cell : {std::pair{1, 0}, {1, 1}, {2, -1}, {2, 0}, {2, 1}, {2, 2},
                          {3, 0}, {3, 1}, {4, -1}, {4, 2}, {5, -1}, {5, 2}}) {
            s.cells[cell] = true;
        }
        return s;
    }
    if (period == 6) {
        TransferScheme s{6, 0, -2, {}};
        for (auto cell : {std::pair{1, -2}, {1, 0}, {2, -3}, {2, -1}, {2, 1}, {3, -2},
                          {3, 0}, {4, -3}, {4, 1}, {6, -3}, {6, 1}}) {
            s.cells[cell] = true;
        }
        return s;
    }
    throw std::invalid_argument("transfer_scheme: canonical periods are 5 and 6");
}

std::vector<TransferObservation> verify_transfer(const TransferScheme& scheme,
                                                 const DensityMatrix& rho_in, int periods,
                                                 const LossModel& losses) {
    if (periods < 1) throw std::invalid_argument("verify_transfer: periods must be >= 1");

    // Evolve the two eigenvectors of rho_in separately (density operators
    // evolve linearly) and mix the conditional blocks at the readout position.
    const auto [lambda_plus, lambda_minus] = rho_in.eigenvalues();
    // eigenvector for a 2x2 Hermitian: (m01, lambda - m00), or (lambda - m11, m10)
    auto eigenvector = [&](double lambda) -> CoinState {
        complexd a = rho_in.m01();
        complexd b = lambda - rho_in.m00();
        if (std::abs(a) + std::abs(b) < 1e-14) {
            a = lambda - rho_in.m11();
            b = rho_in.m10();
        }
        if (std::abs(a) + std::abs(b) < 1e-14) {
            a = 1.0;  // rho proportional to identity: any basis works
            b = 0.0;
        }
        const double n = std::sqrt(std::norm(a) + std::norm(b));
        return {a / n, b / n};
    };
    struct Component {
        double weight;
        WalkState state;
    };
    std::vector<Component> components;
    const CoinState e_plus = eigenvector(lambda_plus);
    if (lambda_plus > 1e-14) {
        components.push_back({lambda_plus, WalkState::localized(scheme.source, e_plus)});
    }
    if (lambda_minus > 1e-14) {
        // orthogonal complement of e_plus
        const CoinState e_minus{-std::conj(e_plus.v), std::conj(e_plus.h)};
        components.push_back({lambda_minus, WalkState::localized(scheme.source, e_minus)});
    }

    const Schedule one_period = scheme.to_schedule(1);
    std::vector<TransferObservation> observations;
    for (int k = 1; k <= periods; ++k) {
        for (auto& comp : components) {
            WalkState s = comp.state;
            for (int n = 1; n <= scheme.period; ++n) {
                s = apply_coin_field(s, [&](int x) { return one_period.coin_at(n, x); });
                s = apply_shift(s);
                if (losses.enabled) {
                    s = scale_amplitudes(s, losses.eta_h * losses.eta_eom,
                                         losses.eta_v * losses.eta_eom);
                }
            }
            comp.state = s;
        }
        const int expected = (k % 2 == 1) ? scheme.target : scheme.source;
        // weighted conditional block at the expected position
        complexd m00{0.0}, m01{0.0}, m10{0.0}, m11{0.0};
        for (const auto& comp : components) {
            const CoinState c = comp.state.at(expected);
            m00 += comp.weight * std::norm(c.h);
            m01 += comp.weight * c.h * std::conj(c.v);
            m10 += comp.weight * c.v * std::conj(c.h);
            m11 += comp.weight * std::norm(c.v);
        }
        const double tr = m00.real() + m11.real();
        if (!(tr > 0.0)) {
            throw std::runtime_error("verify_transfer: no amplitude at expected position " +
                                     std::to_string(expected));
        }
        const DensityMatrix rho = DensityMatrix::from_unnormalized(m00, m01, m10, m11);
        observations.push_back(
            {k * scheme.period, expected, rho, fidelity(rho_in, rho)});
    }
    return observations;
}

}  // namespace qwalk
