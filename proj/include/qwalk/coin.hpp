#pragma once

#include <complex>
#include <string>

namespace qwalk {

using complexd = std::complex<double>;

/// 2x2 unitary acting on the polarization qubit, entries in the (H, V) basis.
struct CoinOperator {
    complexd m00{1.0, 0.0}, m01{0.0, 0.0};
    complexd m10{0.0, 0.0}, m11{1.0, 0.0};

    CoinOperator adjoint() const {
        return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
    }

    CoinOperator operator*(const CoinOperator& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }

    // max-norm deviation of M†M from the identity
    double unitarity_defect() const;

    bool is_unitary(double tol = 1e-12) const { return unitarity_defect() < tol; }
};

double max_entry_difference(const CoinOperator& a, const CoinOperator& b);

CoinOperator identity_coin();

/// EOM operator: e^{i*global_phase} * [[cos phi_u, i sin phi_u], [i sin phi_u, cos phi_u]].
/// Diagonal entries are real and off-diagonals purely imaginary when global_phase = 0.
CoinOperator eom_coin(double phi_u, double global_phase = 0.0);

/// Half-wave plate at fast-axis angle theta (degrees), real Jones form
/// [[cos 2t, sin 2t], [sin 2t, -cos 2t]]. hwp(22.5) is the Hadamard coin.
CoinOperator hwp(double theta_deg);

/// Quarter-wave plate at fast-axis angle theta (degrees):
/// R(t) * diag(1, i) * R(-t). At 45 deg equals (e^{i pi/4}/sqrt2)[[1,-i],[-i,1]].
CoinOperator qwp(double theta_deg);

enum class CoinName { T, R, QWP_PLUS, QWP_MINUS };

/// T = identity, R = [[0,i],[i,0]], QWP_PLUS = eom(+pi/4), QWP_MINUS = eom(-pi/4).
CoinOperator named_coin(CoinName name);
CoinOperator named_coin(const std::string& name);  // throws on unknown name

// ---------------------------------------------------------------------------
// CoinSpec: a coin as the schedule DSL names it. Keeping the parameters (not
// just the realized matrix) lets the Monte Carlo scan perturb waveplate angles.

enum class CoinKind { T, R, QwpPlus, QwpMinus, Hadamard, Hwp, Qwp, Eom };

struct CoinSpec {
    CoinKind kind = CoinKind::T;
    double angle_deg = 0.0;      // Hwp, Qwp
    double phi_u = 0.0;          // Eom (radians)
    double global_phase = 0.0;   // Eom (radians)

    static CoinSpec transmission() { return {CoinKind::T}; }
    static CoinSpec reflection() { return {CoinKind::R}; }
    static CoinSpec qwp_plus() { return {CoinKind::QwpPlus}; }
    static CoinSpec qwp_minus() { return {CoinKind::QwpMinus}; }
    static CoinSpec hadamard() { return {CoinKind::Hadamard}; }
    static CoinSpec hwp_at(double deg) { return {CoinKind::Hwp, deg}; }
    static CoinSpec qwp_at(double deg) { return {CoinKind::Qwp, deg}; }
    static CoinSpec eom_at(double phi, double phase = 0.0) {
        CoinSpec s{CoinKind::Eom};
        s.phi_u = phi;
        s.global_phase = phase;
        return s;
    }

    CoinOperator matrix() const;

    /// Shift waveplate-angle parameters by delta degrees; voltage-driven coins
    /// (T, R, qwp+, qwp-, eom) are unaffected. Hadamard perturbs as hwp(22.5 + d).
    CoinSpec perturbed_angle(double delta_deg) const;

    /// DSL token(s), e.g. "T", "qwp-", "hwp 22.5", "eom 0.785398163 0".
    std::string to_dsl() const;
};

}  // namespace qwalk
