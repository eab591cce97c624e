#pragma once

#include <cmath>
#include <map>
#include <mutex>

#include "laglab/adaptive.hpp"
#include "laglab/types.hpp"

namespace laglab {

// The smooth compactly supported bumps used throughout: the standard
// exp(-1/((t-a)(b-t))) profile rescaled so the peak value is 1 at the center.

/// C^inf bump on (a, b), peak 1 at the midpoint, 0 outside.
inline double bump_on(double t, double a, double b) {
    if (t <= a || t >= b) return 0.0;
    double w = b - a;
    return std::exp(4.0 - w * w / ((t - a) * (b - t)));
}

/// The square-function / sharpness bump phi: support (2^-3, 2^-1), |phi| <= 1.
inline double phi_bump(double t) { return bump_on(t, 0.125, 0.5); }

/// Littlewood-Paley bump psi on (1/2, 2).
inline double psi_bump(double s) { return bump_on(s, 0.5, 2.0); }

/// Member of a smooth dyadic partition with sum_k psi_pu(2^{-k} s) = 1 (s > 0),
/// built by normalizing psi_bump against its own dyadic translates.
inline double psi_partition(double s) {
    if (s <= 0.5 || s >= 2.0) return 0.0;
    double num = psi_bump(s);
    // neighbours 2^{+-1} s are the only overlapping translates
    double den = num + psi_bump(0.5 * s) + psi_bump(2.0 * s);
    return num / den;
}

/// sqrt of the partition member: sum_k psi_partition_sq(2^{-k}s)^2 = 1.
inline double psi_partition_sq(double s) { return std::sqrt(psi_partition(s)); }

/// phihat(xi) = int phi(t) e^{-i xi t} dt by dense Simpson (cached at integer
/// arguments, where the spectral expansions of the sharpness lab read it).
inline complex_t phi_bump_fourier(double xi) {
    int n = 512 + static_cast<int>(std::ceil(std::abs(xi) * (0.5 - 0.125) * 4.0));
    return integrate_simpson(
        [&](double t) {
            double p = phi_bump(t);
            return complex_t(p * std::cos(xi * t), -p * std::sin(xi * t));
        },
        0.125, 0.5, n);
}

inline complex_t phi_bump_fourier_int(long k) {
    static std::map<long, complex_t> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    complex_t v = phi_bump_fourier(static_cast<double>(k));
    cache.emplace(k, v);
    return v;
}

} // namespace laglab
