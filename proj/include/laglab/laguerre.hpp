#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "laglab/types.hpp"

namespace laglab {

// Generalized Laguerre polynomials L_n^a and the derived function systems.
// The numerically stable path everywhere is the normalized function
//   NL_n^a(x) = (Gamma(n+1)/Gamma(n+a+1))^{1/2} e^{-x/2} x^{a/2} L_n^a(x),
// evaluated by a forward three-term recurrence with running rescaling, so the
// whole range (including where e^{-x/2} x^{a/2} underflows in isolation) is
// covered without overflow.

/// Explicit-sum evaluation of L_n^a(x) in 50-digit software arithmetic.
/// Oracle path only; the alternating sum cancels catastrophically in doubles
/// for moderate x, which is exactly why the working-precision code never uses it.
inline double laguerre_poly_explicit(int n, double a, double x) {
    if (!(a > -1.0)) throw domain_error("laguerre_poly_explicit: requires a > -1");
    if (n < 0) throw domain_error("laguerre_poly_explicit: requires n >= 0");
    if (x < 0.0) throw domain_error("laguerre_poly_explicit: requires x >= 0");
    using mp = boost::multiprecision::cpp_bin_float_50;
    // term_0 = Gamma(n+a+1)/(Gamma(n+1)Gamma(a+1)), term ratio
    // term_{j+1}/term_j = -(n-j) x / ((j+a+1)(j+1)).
    mp term = boost::multiprecision::tgamma(mp(n) + mp(a) + 1) /
              (boost::multiprecision::tgamma(mp(n) + 1) * boost::multiprecision::tgamma(mp(a) + 1));
    mp sum = term;
    const mp mx(x);
    for (int j = 0; j < n; ++j) {
        term *= -mp(n - j) * mx / ((mp(j) + mp(a) + 1) * mp(j + 1));
        sum += term;
        if (boost::multiprecision::abs(term) > mp("1e300000"))
            throw numerical_error("laguerre_poly_explicit: overflow in extended precision");
    }
    return static_cast<double>(sum);
}

/// L_0^a(x) .. L_{n_max}^a(x) by the forward three-term recurrence.
/// Unscaled; overflows for large n with large x (use normalized_laguerre_seq there).
inline std::vector<double> laguerre_recurrence(int n_max, double a, double x) {
    if (!(a > -1.0)) throw domain_error("laguerre_recurrence: requires a > -1");
    if (n_max < 0) throw domain_error("laguerre_recurrence: requires n_max >= 0");
    if (x < 0.0) throw domain_error("laguerre_recurrence: requires x >= 0");
    std::vector<double> out(static_cast<size_t>(n_max) + 1);
    out[0] = 1.0;
    if (n_max == 0) return out;
    out[1] = 1.0 + a - x;
    for (int n = 1; n < n_max; ++n)
        out[static_cast<size_t>(n) + 1] =
            ((2.0 * n + 1.0 + a - x) * out[static_cast<size_t>(n)] -
             (n + a) * out[static_cast<size_t>(n) - 1]) /
            (n + 1.0);
    return out;
}

/// L_n^a(0) = Gamma(n+a+1)/(Gamma(n+1)Gamma(a+1)), via log-Gamma.
inline double laguerre_at_zero(int n, double a) {
    if (!(a > -1.0)) throw domain_error("laguerre_at_zero: requires a > -1");
    return std::exp(std::lgamma(n + a + 1.0) - std::lgamma(n + 1.0) - std::lgamma(a + 1.0));
}

namespace detail {

// Normalized recurrence:
//   NL_{n+1} = [(2n+1+a-x) NL_n - sqrt(n(n+a)) NL_{n-1}] / sqrt((n+1)(n+1+a)),
//   NL_0 = exp(-x/2 + (a/2) log x - lgamma(a+1)/2).
// Values are carried as m * e^{S}; S absorbs the (possibly deeply underflowed)
// starting magnitude and the pair is rescaled whenever it drifts out of range.
struct ScaledLagSeq {
    int n_max;
    double a, x;
    double y_prev = 0.0, y_cur = 1.0; // NL_{n-1}, NL_n up to the e^{S} factor
    double log_scale;
    int n = 0;

    ScaledLagSeq(int n_max_, double a_, double x_) : n_max(n_max_), a(a_), x(x_) {
        log_scale = -0.5 * x + (x > 0.0 ? 0.5 * a * std::log(x) : 0.0) - 0.5 * std::lgamma(a + 1.0);
    }

    double current() const {
        double l = log_scale + std::log(std::abs(y_cur));
        if (y_cur == 0.0 || l < -745.0) return 0.0;
        return std::copysign(std::exp(l), y_cur);
    }

    void advance() {
        double y_next = ((2.0 * n + 1.0 + a - x) * y_cur - std::sqrt(n * (n + a)) * y_prev) /
                        std::sqrt((n + 1.0) * (n + 1.0 + a));
        y_prev = y_cur;
        y_cur = y_next;
        ++n;
        double m = std::max(std::abs(y_prev), std::abs(y_cur));
        if (m > 1e250) {
            y_prev *= 1e-250;
            y_cur *= 1e-250;
            log_scale += std::log(1e250);
        } else if (m > 0.0 && m < 1e-250) {
            y_prev *= 1e250;
            y_cur *= 1e250;
            log_scale -= std::log(1e250);
        }
    }
};

} // namespace detail

/// NL_0^a(x) .. NL_{n_max}^a(x). Entries that underflow in double are 0.
inline std::vector<double> normalized_laguerre_seq(int n_max, double a, double x) {
    if (!(a > -1.0)) throw domain_error("normalized_laguerre_seq: requires a > -1");
    if (!(x > 0.0)) throw domain_error("normalized_laguerre_seq: requires x > 0");
    std::vector<double> out(static_cast<size_t>(n_max) + 1);
    detail::ScaledLagSeq seq(n_max, a, x);
    out[0] = seq.current();
    for (int n = 1; n <= n_max; ++n) {
        seq.advance();
        out[static_cast<size_t>(n)] = seq.current();
    }
    return out;
}

/// Normalized Laguerre function NL_n^a(x). Sets *underflowed (if given) when
/// the value is below the double range and 0 is returned.
inline double normalized_laguerre(int n, double a, double x, bool* underflowed = nullptr) {
    if (!(a > -1.0)) throw domain_error("normalized_laguerre: requires a > -1");
    if (underflowed) *underflowed = false;
    if (x == 0.0) {
        if (a > 0.0) return 0.0;
        if (a == 0.0) return 1.0; // NL_n^0(0) = L_n^0(0) = 1
        return std::numeric_limits<double>::infinity();
    }
    double v = normalized_laguerre_seq(n, a, x)[static_cast<size_t>(n)];
    if (v == 0.0 && underflowed) *underflowed = true;
    return v;
}

/// d/dx NL_n^a(x) = [(n + a/2 - x/2) NL_n^a(x) - sqrt(n(n+a)) NL_{n-1}^a(x)] / x.
inline double normalized_laguerre_deriv(int n, double a, double x) {
    auto v = normalized_laguerre_seq(n, a, x);
    double prev = n > 0 ? v[static_cast<size_t>(n) - 1] : 0.0;
    return ((n + 0.5 * a - 0.5 * x) * v[static_cast<size_t>(n)] -
            std::sqrt(static_cast<double>(n) * (n + a)) * prev) /
           x;
}

/// One-dimensional eigenfunction phi_n^a(x) = sqrt(2x) NL_n^a(x^2), extended
/// by continuity at x = 0 (0 for a > -1/2, finite for a = -1/2).
inline double laguerre_function_1d(int n, double a, double x) {
    if (x == 0.0) {
        if (a > -0.5) return 0.0;
        // phi_n^{-1/2}(0) = (2 n! / Gamma(n+1/2))^{1/2} L_n^{-1/2}(0)
        return std::exp(0.5 * (std::log(2.0) + std::lgamma(n + 1.0) - std::lgamma(n + 0.5)) +
                        std::lgamma(n + 0.5) - std::lgamma(n + 1.0) - std::lgamma(0.5));
    }
    if (!(x > 0.0)) throw domain_error("laguerre_function_1d: requires x >= 0");
    return std::sqrt(2.0 * x) * normalized_laguerre(n, a, x * x);
}

/// phi_0^a .. phi_{n_max}^a at x, one recurrence pass.
inline std::vector<double> laguerre_function_1d_seq(int n_max, double a, double x) {
    std::vector<double> v = normalized_laguerre_seq(n_max, a, x * x);
    double s = std::sqrt(2.0 * x);
    for (double& t : v) t *= s;
    return v;
}

/// Multi-dimensional eigenfunction phi_mu^alpha(x) = prod_i phi_{mu_i}^{alpha_i}(x_i).
inline double laguerre_function_md(const MultiIndex& mu, const AlphaParam& alpha,
                                   const EvalPoint& x) {
    if (mu.dim() != alpha.dim() || mu.dim() != x.dim())
        throw dimension_error("laguerre_function_md: dimension mismatch");
    double p = 1.0;
    for (int i = 0; i < mu.dim(); ++i) p *= laguerre_function_1d(mu[i], alpha[i], x[i]);
    return p;
}

/// Partial sum and closed form of the generating identity
/// sum_n L_n^a(x) t^n = (1-t)^{-a-1} e^{-xt/(1-t)}.
struct GeneratingCheck {
    double partial;
    double closed;
};

inline GeneratingCheck generating_check(double a, double x, double t, int N) {
    if (!(std::abs(t) < 1.0)) throw domain_error("generating_check: requires |t| < 1");
    if (N < 1) throw domain_error("generating_check: requires N >= 1");
    auto l = laguerre_recurrence(N, a, x);
    double partial = 0.0, tn = 1.0;
    for (int n = 0; n <= N; ++n) {
        partial += l[static_cast<size_t>(n)] * tn;
        tn *= t;
    }
    double closed = std::pow(1.0 - t, -a - 1.0) * std::exp(-x * t / (1.0 - t));
    return {partial, closed};
}

} // namespace laglab
