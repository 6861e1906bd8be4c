#include "qwalk/coin.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qwalk {

namespace {
constexpr double kPi = std::numbers::pi;
const complexd kI{0.0, 1.0};

double deg2rad(double deg) { return deg * kPi / 180.0; }
}  // namespace

double CoinOperator::unitarity_defect() const {
    const CoinOperator p = adjoint() * (*this);
    double d = std::abs(p.m00 - 1.0);
    d = std::max(d, std::abs(p.m11 - 1.0));
    d = std::max(d, std::abs(p.m01));
    d = std::max(d, std::abs(p.m10));
    return d;
}

double max_entry_difference(const CoinOperator& a, const CoinOperator& b) {
    double d = std::abs(a.m00 - b.m00);
    d = std::max(d, std::abs(a.m01 - b.m01));
    d = std::max(d, std::abs(a.m10 - b.m10));
    d = std::max(d, std::abs(a.m11 - b.m11));
    return d;
}

CoinOperator identity_coin() { return {}; }

namespace {
// exact off-diagonal form; cos(pi/2) through eom_coin would leave an O(1e-17)
// diagonal residue and break the exact-zero confinement of bounded walks
CoinOperator reflection_exact() {
    return {complexd{0.0, 0.0}, complexd{0.0, 1.0}, complexd{0.0, 1.0},
            complexd{0.0, 0.0}};
}
}  // namespace

CoinOperator eom_coin(double phi_u, double global_phase) {
    const complexd g = std::exp(kI * global_phase);
    const double c = std::cos(phi_u);
    const double s = std::sin(phi_u);
    return {g * c, g * kI * s, g * kI * s, g * c};
}

CoinOperator hwp(double theta_deg) {
    const double t = deg2rad(theta_deg);
    const double c = std::cos(2.0 * t);
    const double s = std::sin(2.0 * t);
    return {complexd{c, 0.0}, complexd{s, 0.0}, complexd{s, 0.0}, complexd{-c, 0.0}};
}

CoinOperator qwp(double theta_deg) {
    // R(t) * diag(1, i) * R(-t) with R(t) = [[cos t, -sin t], [sin t, cos t]]
    const double t = deg2rad(theta_deg);
    const double c = std::cos(t);
    const double s = std::sin(t);
    return {complexd{c * c, s * s}, s * c * (complexd{1.0, -1.0}),
            s * c * (complexd{1.0, -1.0}), complexd{s * s, c * c}};
}

CoinOperator named_coin(CoinName name) {
    switch (name) {
        case CoinName::T:
            return identity_coin();
        case CoinName::R:
            return reflection_exact();
        case CoinName::QWP_PLUS:
            return eom_coin(kPi / 4.0);
        case CoinName::QWP_MINUS:
            return eom_coin(-kPi / 4.0);
    }
    throw std::invalid_argument("named_coin: bad enum value");
}

CoinOperator named_coin(const std::string& name) {
    if (name == "T") return named_coin(CoinName::T);
    if (name == "R") return named_coin(CoinName::R);
    if (name == "QWP_PLUS" || name == "qwp+") return named_coin(CoinName::QWP_PLUS);
    if (name == "QWP_MINUS" || name == "qwp-") return named_coin(CoinName::QWP_MINUS);
    throw std::invalid_argument("named_coin: unknown coin name '" + name + "'");
}

CoinOperator CoinSpec::matrix() const {
    switch (kind) {
        case CoinKind::T:
            return identity_coin();
        case CoinKind::R:
            return reflection_exact();
        case CoinKind::QwpPlus:
            return eom_coin(kPi / 4.0);
        case CoinKind::QwpMinus:
            return eom_coin(-kPi / 4.0);
        case CoinKind::Hadamard:
            return hwp(22.5);
        case CoinKind::Hwp:
            return hwp(angle_deg);
        case CoinKind::Qwp:
            return qwp(angle_deg);
        case CoinKind::Eom:
            return eom_coin(phi_u, global_phase);
    }
    throw std::invalid_argument("CoinSpec::matrix: bad kind");
}

CoinSpec CoinSpec::perturbed_angle(double delta_deg) const {
    switch (kind) {
        case CoinKind::Hwp:
        case CoinKind::Qwp: {
            CoinSpec s = *this;
            s.angle_deg += delta_deg;
            return s;
        }
        case CoinKind::Hadamard:
            return CoinSpec::hwp_at(22.5 + delta_deg);
        default:
            return *this;
    }
}

std::string CoinSpec::to_dsl() const {
    std::ostringstream os;
    os.precision(12);
    switch (kind) {
        case CoinKind::T:
            return "T";
        case CoinKind::R:
            return "R";
        case CoinKind::QwpPlus:
            return "qwp+";
        case CoinKind::QwpMinus:
            return "qwp-";
        case CoinKind::Hadamard:
            return "H";
        case CoinKind::Hwp:
            os << "hwp " << angle_deg;
            return os.str();
        case CoinKind::Qwp:
            os << "qwp " << angle_deg;
            return os.str();
        case CoinKind::Eom:
            os << "eom " << phi_u;
            if (global_phase != 0.0) os << " " << global_phase;
            return os.str();
    }
    throw std::invalid_argument("CoinSpec::to_dsl: bad kind");
}

}  // namespace qwalk
