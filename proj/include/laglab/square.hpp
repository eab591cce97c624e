#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "laglab/adaptive.hpp"
#include "laglab/quadrature.hpp"
#include "laglab/spectral.hpp"
#include "laglab/types.hpp"

namespace laglab {

// Square function S_delta f(x) = (int |phi(delta^{-1}(1 - L/t^2)) f(x)|^2 dt/t)^{1/2}
// split at t = delta^{-1/2} into low and high parts. The spectral support of
// the level-n contribution is the t-window
//   [sqrt(e_n/(1 - delta/8)), sqrt(e_n/(1 - delta/2))],
// so the dt/t integral is taken over the union of the (clipped) level windows,
// each resolved by a log-uniform trapezoid grid: at least 64 points per octave
// globally and at least 48 points across the narrowest window in a cluster.

struct SquareFunctionResult {
    double low = 0.0;
    double high = 0.0;
    double total = 0.0;
};

struct TGridSpec {
    int points_per_octave = 64;
    int points_per_window = 48;
    double t_min = 0.5;
};

namespace detail {

struct TCluster {
    double lo, hi;      // t range
    double min_window;  // narrowest level window inside
};

inline std::vector<TCluster> level_t_clusters(const AlphaParam& alpha, int max_level,
                                              double delta, double lo_clip, double hi_clip) {
    std::vector<TCluster> wins;
    for (int n = 0; n <= max_level; ++n) {
        double e = eigenvalue(n, alpha);
        double t1 = std::sqrt(e / (1.0 - 0.125 * delta));
        double t2 = std::sqrt(e / (1.0 - 0.5 * delta));
        t1 = std::max(t1, lo_clip);
        t2 = std::min(t2, hi_clip);
        if (t1 >= t2) continue;
        wins.push_back({t1, t2, t2 - t1});
    }
    std::sort(wins.begin(), wins.end(), [](const TCluster& a, const TCluster& b) {
        return a.lo < b.lo;
    });
    std::vector<TCluster> merged;
    for (const auto& w : wins) {
        if (!merged.empty() && w.lo <= merged.back().hi * (1.0 + 1e-12)) {
            merged.back().hi = std::max(merged.back().hi, w.hi);
            merged.back().min_window = std::min(merged.back().min_window, w.min_window);
        } else {
            merged.push_back(w);
        }
    }
    return merged;
}

/// integral over the clusters of |sum_n m_t(n) lv_n|^2 dt/t, trapezoid in log t.
template <typename LevelWeight, typename Combine>
double integrate_clusters(const std::vector<TCluster>& clusters, const TGridSpec& grid,
                          const LevelWeight& level_weight, const Combine& combine) {
    double acc = 0.0;
    for (const auto& cl : clusters) {
        double width_log = std::log(cl.hi / cl.lo);
        int n_oct = static_cast<int>(std::ceil(grid.points_per_octave * width_log / M_LN2));
        int n_win = static_cast<int>(
            std::ceil(grid.points_per_window * (cl.hi - cl.lo) / cl.min_window));
        int npts = std::max({n_oct, n_win, 16});
        double h = width_log / npts;
        double prev = combine(cl.lo, level_weight);
        for (int i = 1; i <= npts; ++i) {
            double t = cl.lo * std::exp(i * h);
            double cur = combine(t, level_weight);
            acc += 0.5 * (prev + cur) * h;
            prev = cur;
        }
    }
    return acc;
}

} // namespace detail

/// Square function at a point: per-level synthesized values are combined with
/// the multiplier phi(delta^{-1}(1 - e_n/t^2)) and integrated in dt/t.
inline SquareFunctionResult square_function(const SpectralCoefficients& c, double delta,
                                            const std::function<double(double)>& phi,
                                            const TGridSpec& grid, const EvalPoint& x) {
    if (!(delta > 0.0 && delta < 0.5))
        throw domain_error("square_function: delta in (0, 1/2) required");
    auto lv = level_values_at(c, x);
    auto weight = [&](double t, int n) {
        double u = (1.0 - eigenvalue(n, c.alpha()) / (t * t)) / delta;
        return (u > 0.125 && u < 0.5) ? phi(u) : 0.0;
    };
    auto combine = [&](double t, const auto& wfun) {
        complex_t s(0.0, 0.0);
        for (int n = 0; n <= c.max_level(); ++n) {
            double w = wfun(t, n);
            if (w != 0.0) s += w * lv[static_cast<size_t>(n)];
        }
        return std::norm(s);
    };
    double split = 1.0 / std::sqrt(delta);
    double t_max = std::sqrt(eigenvalue(c.max_level(), c.alpha()) / (1.0 - 0.5 * delta)) + 1.0;
    auto lo_cl = detail::level_t_clusters(c.alpha(), c.max_level(), delta, grid.t_min, split);
    auto hi_cl = detail::level_t_clusters(c.alpha(), c.max_level(), delta, split, t_max);
    SquareFunctionResult r;
    double lo2 = detail::integrate_clusters(lo_cl, grid, weight, combine);
    double hi2 = detail::integrate_clusters(hi_cl, grid, weight, combine);
    r.low = std::sqrt(lo2);
    r.high = std::sqrt(hi2);
    r.total = std::sqrt(lo2 + hi2);
    return r;
}

/// Weighted L^2((1+|x|)^{-beta}) norm of S_delta f over the rule, through the
/// level cross-Gram: ||S f||^2 = int dt/t sum_{n,n'} m_t(n) m_t(n') W_{nn'}.
inline SquareFunctionResult square_function_weighted_norm(const SpectralCoefficients& c,
                                                          double delta,
                                                          const std::function<double(double)>& phi,
                                                          const TGridSpec& grid, double beta,
                                                          const BasisTable& table) {
    if (!(delta > 0.0 && delta < 0.5))
        throw domain_error("square_function_weighted_norm: delta in (0, 1/2) required");
    const QuadratureRule& rule = table.rule();
    auto rows = level_values_on_rule(c, table);
    const int L = c.max_level();
    std::vector<double> wt(rule.size());
    for (size_t i = 0; i < rule.size(); ++i)
        wt[i] = rule.weights[i] * std::pow(1.0 + rule.nodes[i].norm(), -beta);
    std::vector<std::vector<double>> W(static_cast<size_t>(L) + 1,
                                       std::vector<double>(static_cast<size_t>(L) + 1, 0.0));
    for (int n = 0; n <= L; ++n)
        for (int m = n; m <= L; ++m) {
            // cross terms vanish unless the t-windows of the two levels meet
            double en = eigenvalue(n, c.alpha()), em = eigenvalue(m, c.alpha());
            if (em * (1.0 - 0.5 * delta) > en * (1.0 - 0.125 * delta)) continue;
            double s = 0.0;
            for (size_t i = 0; i < rule.size(); ++i)
                s += wt[i] * (rows[static_cast<size_t>(n)][i] *
                              std::conj(rows[static_cast<size_t>(m)][i]))
                                 .real();
            W[static_cast<size_t>(n)][static_cast<size_t>(m)] = s;
            W[static_cast<size_t>(m)][static_cast<size_t>(n)] = s;
        }
    auto weight = [&](double t, int n) {
        double u = (1.0 - eigenvalue(n, c.alpha()) / (t * t)) / delta;
        return (u > 0.125 && u < 0.5) ? phi(u) : 0.0;
    };
    auto combine = [&](double t, const auto& wfun) {
        // active levels at t form a short contiguous run
        double s = 0.0;
        std::vector<std::pair<int, double>> act;
        for (int n = 0; n <= L; ++n) {
            double w = wfun(t, n);
            if (w != 0.0) act.emplace_back(n, w);
        }
        for (const auto& [n, w1] : act)
            for (const auto& [m, w2] : act)
                s += w1 * w2 * W[static_cast<size_t>(n)][static_cast<size_t>(m)];
        return s;
    };
    double split = 1.0 / std::sqrt(delta);
    double t_max = std::sqrt(eigenvalue(L, c.alpha()) / (1.0 - 0.5 * delta)) + 1.0;
    auto lo_cl = detail::level_t_clusters(c.alpha(), L, delta, grid.t_min, split);
    auto hi_cl = detail::level_t_clusters(c.alpha(), L, delta, split, t_max);
    SquareFunctionResult r;
    double lo2 = detail::integrate_clusters(lo_cl, grid, weight, combine);
    double hi2 = detail::integrate_clusters(hi_cl, grid, weight, combine);
    r.low = std::sqrt(std::max(0.0, lo2));
    r.high = std::sqrt(std::max(0.0, hi2));
    r.total = std::sqrt(std::max(0.0, lo2 + hi2));
    return r;
}

/// Stein-Wainger style local average (R^{-1} int_0^R |S_t^rho f(x)|^2 dt)^{1/2},
/// log-uniform quadrature in t from just below sqrt(e_0) (the integrand
/// vanishes for t^2 < e_0).
inline double stein_wainger_average(const SpectralCoefficients& c, double rho, double R,
                                    const EvalPoint& x, int points_per_octave = 256) {
    if (!(rho > -0.5)) throw domain_error("stein_wainger_average: rho > -1/2 required");
    if (!(R > 0.0)) throw domain_error("stein_wainger_average: R > 0 required");
    double t_lo = 0.999 * std::sqrt(eigenvalue(0, c.alpha()));
    if (R <= t_lo) return 0.0;
    auto lv = level_values_at(c, x);
    auto st = [&](double t) {
        complex_t s(0.0, 0.0);
        for (int n = 0; n <= c.max_level(); ++n) {
            double u = 1.0 - eigenvalue(n, c.alpha()) / (t * t);
            if (u <= 0.0) continue;
            s += std::pow(u, rho) * lv[static_cast<size_t>(n)];
        }
        return std::norm(s);
    };
    double width_log = std::log(R / t_lo);
    int npts = std::max(64, static_cast<int>(std::ceil(points_per_octave * width_log / M_LN2)));
    double h = width_log / npts;
    // int_0^R |...|^2 dt = int |...|^2 t dlog t over [t_lo, R]
    double acc = 0.0, prev = st(t_lo) * t_lo;
    for (int i = 1; i <= npts; ++i) {
        double t = t_lo * std::exp(i * h);
        double cur = st(t) * t;
        acc += 0.5 * (prev + cur) * h;
        prev = cur;
    }
    return std::sqrt(acc / R);
}

} // namespace laglab
