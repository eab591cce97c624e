#pragma once

#include <cmath>

#include "laglab/fixtures.hpp"
#include "laglab/types.hpp"

namespace laglab {

// Four-regime envelope for the normalized Laguerre function NL_n^a, with
// nu = 4n + 2a + 2 and breakpoints 1/nu, nu/2, 3nu/2. The multiplicative
// constant C and tail rate gamma are calibrated once over a reference sweep
// and pinned in the fixtures file, never re-fit at test time.

enum class Regime { Below1OverNu, Bulk, Transition, ExponentialTail };

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Below1OverNu: return "BELOW_1_OVER_NU";
        case Regime::Bulk: return "BULK";
        case Regime::Transition: return "TRANSITION";
        case Regime::ExponentialTail: return "EXPONENTIAL_TAIL";
    }
    return "?";
}

struct RegimeTag {
    Regime regime;
    double nu;
};

struct EnvelopeConstants {
    double C = 1.0;
    double gamma = 0.06;
    double osc_C = 1.0; // constant for the oscillatory remainder budget

    static EnvelopeConstants from(const Fixtures& fx) {
        EnvelopeConstants e;
        e.C = fx.get("envelope_C");
        e.gamma = fx.get("envelope_gamma");
        e.osc_C = fx.get("osc_C");
        return e;
    }
};

inline RegimeTag classify_regime(int n, double a, double x) {
    double nu = 4.0 * n + 2.0 * a + 2.0;
    if (x <= 1.0 / nu) return {Regime::Below1OverNu, nu};
    if (x <= 0.5 * nu) return {Regime::Bulk, nu};
    if (x <= 1.5 * nu) return {Regime::Transition, nu};
    return {Regime::ExponentialTail, nu};
}

struct EnvelopeResult {
    RegimeTag tag;
    double bound;
};

inline EnvelopeResult asymptotic_envelope(int n, double a, double x,
                                          const EnvelopeConstants& k = {}) {
    if (!(a > -1.0)) throw domain_error("asymptotic_envelope: requires a > -1");
    if (!(x >= 0.0)) throw domain_error("asymptotic_envelope: requires x >= 0");
    RegimeTag tag = classify_regime(n, a, x);
    double nu = tag.nu, b = 0.0;
    switch (tag.regime) {
        case Regime::Below1OverNu: b = std::pow(x * nu, 0.5 * a); break;
        case Regime::Bulk: b = std::pow(x * nu, -0.25); break;
        case Regime::Transition:
            b = std::pow(nu, -0.25) * std::pow(std::cbrt(nu) + std::abs(nu - x), -0.25);
            break;
        case Regime::ExponentialTail: b = std::exp(-k.gamma * x); break;
    }
    return {tag, k.C * b};
}

struct OscillatoryApprox {
    double main;
    double error_budget;
};

/// Main oscillatory term of NL_n^a on 1 <= x <= nu - nu^{1/3}:
/// (2/pi)^{1/2} (-1)^n x^{-1/4} (nu-x)^{-1/4} cos((nu(2 theta - sin 2 theta) - pi)/4),
/// theta = arccos(sqrt(x/nu)); remainder budget nu^{1/4}(nu-x)^{-7/4} + (x nu)^{-3/4}.
inline OscillatoryApprox oscillatory_approx(int n, double a, double x,
                                            const EnvelopeConstants& k = {}) {
    double nu = 4.0 * n + 2.0 * a + 2.0;
    if (!(x >= 1.0) || !(x <= nu - std::cbrt(nu)))
        throw domain_error("oscillatory_approx: x outside [1, nu - nu^{1/3}]");
    double theta = std::acos(std::sqrt(x / nu));
    double phase = (nu * (2.0 * theta - std::sin(2.0 * theta)) - M_PI) / 4.0;
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    double main = std::sqrt(2.0 / M_PI) * sign * std::pow(x, -0.25) *
                  std::pow(nu - x, -0.25) * std::cos(phase);
    double budget = k.osc_C * (std::pow(nu, 0.25) * std::pow(nu - x, -1.75) +
                               std::pow(x * nu, -0.75));
    return {main, budget};
}

} // namespace laglab
