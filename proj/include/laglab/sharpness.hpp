#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "laglab/adaptive.hpp"
#include "laglab/bump.hpp"
#include "laglab/laguerre.hpp"
#include "laglab/rng.hpp"
#include "laglab/spectral.hpp"
#include "laglab/types.hpp"

namespace laglab {

// Counterexample machinery: level kernels G_n, the Abel-summed generating
// kernel G_r(t,x) and its boundary limit G(t,x), the oscillatory seed
// functions g_mu, and the divergence experiment below the critical index.
//
// Everything radial reduces to the type parameter a = |alpha|_1 + d - 1:
//   G_n(x) = Ang(x) e^{-|x|^2/2} L_n^a(|x|^2),
//   Ang(x) = prod_i sqrt(2/Gamma(alpha_i+1)) x_i^{alpha_i+1/2}.

/// lambda(p) = max{d(1/2 - 1/p) - 1/2, 0}.
inline double lambda_critical(double p, int d) {
    return std::max(d * (0.5 - 1.0 / p) - 0.5, 0.0);
}

/// prod_i sqrt(L_{mu_i}^{alpha_i}(0)) via log-Gamma.
inline double level_zero_normalized(const MultiIndex& mu, const AlphaParam& alpha) {
    if (mu.dim() != alpha.dim())
        throw dimension_error("level_zero_normalized: dimension mismatch");
    double lg = 0.0;
    for (int i = 0; i < mu.dim(); ++i)
        lg += 0.5 * (std::lgamma(mu[i] + alpha[i] + 1.0) - std::lgamma(mu[i] + 1.0) -
                     std::lgamma(alpha[i] + 1.0));
    return std::exp(lg);
}

inline double angular_factor(const AlphaParam& alpha, const EvalPoint& x) {
    double v = 1.0;
    for (int i = 0; i < alpha.dim(); ++i)
        v *= std::sqrt(2.0 / std::tgamma(alpha[i] + 1.0)) * std::pow(x[i], alpha[i] + 0.5);
    return v;
}

/// Radial part e^{-rho/2} L_n^a(rho) with a = |alpha|_1 + d - 1, evaluated
/// through the normalized recurrence (stable at any n, rho).
inline double g_level_radial(int n, const AlphaParam& alpha, double rho) {
    double a = alpha.l1() + alpha.dim() - 1.0;
    double nl = normalized_laguerre(n, a, rho);
    return nl * std::pow(rho, -0.5 * a) *
           std::exp(0.5 * (std::lgamma(n + a + 1.0) - std::lgamma(n + 1.0)));
}

/// All radial parts for n <= n_max at one rho (single recurrence pass).
inline std::vector<double> g_level_radial_seq(int n_max, const AlphaParam& alpha, double rho) {
    double a = alpha.l1() + alpha.dim() - 1.0;
    auto nl = normalized_laguerre_seq(n_max, a, rho);
    double lg0 = -0.5 * a * std::log(rho);
    for (int n = 0; n <= n_max; ++n)
        nl[static_cast<size_t>(n)] *=
            std::exp(lg0 + 0.5 * (std::lgamma(n + a + 1.0) - std::lgamma(n + 1.0)));
    return nl;
}

/// G_n(x), closed form.
inline double g_level(int n, const AlphaParam& alpha, const EvalPoint& x) {
    return angular_factor(alpha, x) * g_level_radial(n, alpha, x.norm2());
}

/// G_n(x) through the defining sum over |mu|_1 = n (cross-check route).
inline double g_level_sum(int n, const AlphaParam& alpha, const EvalPoint& x) {
    double s = 0.0;
    for (const auto& mu : enumerate_level(n, alpha.dim()))
        s += laguerre_function_md(mu, alpha, x) * level_zero_normalized(mu, alpha);
    return s;
}

struct AbelSum {
    complex_t series;
    complex_t closed;
};

/// Abel-summed generating kernel at omega = r e^{-it}: truncated series
/// sum_{n<=N} G_n(x) r^n e^{-int} against the closed form.
inline AbelSum abel_sum(double r, double t, const EvalPoint& x, const AlphaParam& alpha,
                        int N) {
    if (!(r >= 0.0 && r < 1.0)) throw domain_error("abel_sum: r in [0,1) required");
    double rho = x.norm2();
    double ang = angular_factor(alpha, x);
    auto rad = g_level_radial_seq(N, alpha, rho);
    complex_t omega = r * complex_t(std::cos(t), -std::sin(t));
    complex_t series(0.0, 0.0), w(1.0, 0.0);
    for (int n = 0; n <= N; ++n) {
        series += rad[static_cast<size_t>(n)] * w; // rad carries e^{-rho/2} L_n^a(rho)
        w *= omega;
    }
    series *= ang;
    double A = alpha.l1() + alpha.dim();
    complex_t one_m = 1.0 - omega;
    complex_t closed = ang * std::exp(-0.5 * rho - rho * omega / one_m) * std::pow(one_m, -A);
    return {series, closed};
}

/// Boundary limit G(t,x) = (e^{it/2}/(2i sin(t/2)))^{|alpha|_1+d}
/// e^{(i/2)|x|^2 cot(t/2)} Ang(x); singular where sin(t/2) = 0.
inline complex_t generating_limit(double t, const EvalPoint& x, const AlphaParam& alpha) {
    double s = std::sin(0.5 * t);
    if (s == 0.0) throw domain_error("generating_limit: singular t (multiple of 2 pi)");
    double A = alpha.l1() + alpha.dim();
    complex_t base = std::exp(complex_t(0.0, 0.5 * t)) / complex_t(0.0, 2.0 * s);
    complex_t phase = std::exp(complex_t(0.0, 0.5 * x.norm2() * (std::cos(0.5 * t) / s)));
    return std::pow(base, A) * phase * angular_factor(alpha, x);
}

struct OscResult {
    complex_t value;
    bool resolved = true; // false when mu exceeded the grid budget
};

/// Radial oscillatory integral int phi(t) (e^{it/2}/(2i sin t/2))^A
/// e^{i(rho cot(t/2)/2 + mu t)} dt over the bump support. Composite Simpson on
/// a uniform grid: at least the configured floor of points, and at least 20
/// samples per period of the phase (max|phase'| = mu + rho csc^2(1/16)/4).
inline OscResult gk_radial(long mu, const AlphaParam& alpha, double rho,
                           const std::function<double(double)>& phi = phi_bump,
                           long grid_budget = 40000000) {
    const double a_lo = 0.125, a_hi = 0.5;
    double A = alpha.l1() + alpha.dim();
    double csc2 = 1.0 / (std::sin(0.5 * a_lo) * std::sin(0.5 * a_lo));
    double max_dphase = static_cast<double>(mu) + 0.25 * rho * csc2;
    long floor_pts = static_cast<long>(40.0 * (1.0 + static_cast<double>(mu) / 100.0));
    long phase_pts =
        static_cast<long>(std::ceil((a_hi - a_lo) * max_dphase * 20.0 / (2.0 * M_PI)));
    long n = std::max({floor_pts, phase_pts, 400L});
    OscResult out;
    if (n > grid_budget) {
        out.resolved = false;
        n = grid_budget;
    }
    out.value = integrate_simpson(
        [&](double t) -> complex_t {
            double p = phi(t);
            if (p == 0.0) return complex_t(0.0, 0.0);
            double s = std::sin(0.5 * t);
            double mod = std::pow(2.0 * s, -A);
            double arg = A * (0.5 * t - 0.5 * M_PI);
            double ph = 0.5 * rho * (std::cos(0.5 * t) / s) + static_cast<double>(mu) * t;
            return p * mod * std::exp(complex_t(0.0, arg + ph));
        },
        a_lo, a_hi, static_cast<int>(n));
    return out;
}

/// g_mu(x) = Ang(x) * gk_radial(mu, |x|^2): the oscillatory seed function.
inline OscResult oscillatory_gk(long mu, const EvalPoint& x, const AlphaParam& alpha,
                                const std::function<double(double)>& phi = phi_bump,
                                long grid_budget = 40000000) {
    OscResult r = gk_radial(mu, alpha, x.norm2(), phi, grid_budget);
    r.value *= angular_factor(alpha, x);
    return r;
}

/// Spectral route for the same radial profile:
/// sum_n phihat(n - mu) e^{-rho/2} L_n^a(rho), window where phihat is above tol.
inline complex_t gk_radial_spectral(long mu, const AlphaParam& alpha, double rho, int window) {
    int n_max = static_cast<int>(mu) + window;
    auto rad = g_level_radial_seq(n_max, alpha, rho);
    complex_t s(0.0, 0.0);
    for (int n = std::max(0L, mu - window); n <= n_max; ++n)
        s += phi_bump_fourier_int(n - mu) * rad[static_cast<size_t>(n)];
    return s;
}

/// Window W such that |phihat| < tol * |phihat(0)| outside [-W, W].
inline int phi_fourier_window(double tol) {
    double base = std::abs(phi_bump_fourier_int(0));
    int k = 1;
    int last_above = 0;
    while (k < 20000) {
        if (std::abs(phi_bump_fourier_int(k)) >= tol * base) last_above = k;
        if (k - last_above > 64) break; // decay is not monotone; require a clear run
        ++k;
    }
    return last_above + 1;
}

struct ProjectionIdentity {
    complex_t lhs; // project(analyze(g_j), mu_k) synthesized at x
    complex_t rhs; // phihat(mu_k - mu_j) G_{mu_k}(x)
};

/// Eq.-level check that the mu_k-level projection of g_{mu_j} is
/// phihat(mu_k - mu_j) times the level kernel, d = 1.
inline ProjectionIdentity projection_identity_check(int mu_k, int mu_j,
                                                    const AlphaParam& alpha,
                                                    const EvalPoint& x, int pad = 96) {
    if (alpha.dim() != 1)
        throw domain_error("projection_identity_check: d = 1 probes only");
    int N = std::max(mu_k, mu_j) + pad;
    QuadratureRule rule = build_rule(alpha, 2 * N + 16);
    GridFunction g(rule);
    for (size_t i = 0; i < rule.size(); ++i)
        g.values[i] = oscillatory_gk(mu_j, rule.nodes[i], alpha).value;
    auto coeffs = analyze(g, alpha, N);
    auto proj = project(coeffs, mu_k);
    ProjectionIdentity out;
    out.lhs = synthesize(proj.coeffs, x);
    out.rhs = phi_bump_fourier_int(mu_k - mu_j) * g_level(mu_k, alpha, x);
    return out;
}

/// Lebesgue measure (midpoint grid over the orthant annulus 1 <= |x| <= 2) of
/// {x : |G_mu(x)| >= threshold_c * mu^{(|alpha|_1+d)/2 - 3/4}}, plus a seeded
/// Monte-Carlo cross-estimate.
struct ShellMeasure {
    double grid_estimate = 0.0;
    double mc_estimate = 0.0;
    double shell_volume = 0.0;
};

inline ShellMeasure lower_bound_set_measure(long mu, const AlphaParam& alpha,
                                            double threshold_c, int grid_per_axis = 512,
                                            std::uint64_t seed = 11) {
    const int d = alpha.dim();
    double scale = std::pow(static_cast<double>(mu), 0.5 * (alpha.l1() + d) - 0.75);
    double thr = threshold_c * scale;
    // radial table over rho = |x|^2 in [1,4]
    const int nr = 4096;
    std::vector<double> rad(static_cast<size_t>(nr) + 1);
    for (int i = 0; i <= nr; ++i) {
        double rho = 1.0 + 3.0 * i / nr;
        rad[static_cast<size_t>(i)] =
            g_level_radial(static_cast<int>(mu), alpha, rho);
    }
    auto radial_at = [&](double rho) {
        double u = (rho - 1.0) / 3.0 * nr;
        int i = std::min(nr - 1, static_cast<int>(u));
        double f = u - i;
        return (1.0 - f) * rad[static_cast<size_t>(i)] + f * rad[static_cast<size_t>(i) + 1];
    };
    auto excess = [&](const std::vector<double>& pt) {
        double n2 = 0.0;
        for (double v : pt) n2 += v * v;
        if (n2 < 1.0 || n2 > 4.0) return -1; // outside shell
        bool pos = true;
        for (double v : pt) pos = pos && v > 0.0;
        if (!pos) return -1;
        EvalPoint x(pt);
        double g = std::abs(angular_factor(alpha, x) * radial_at(n2));
        return g >= thr ? 1 : 0;
    };
    // deterministic midpoint grid over [0,2]^d
    double h = 2.0 / grid_per_axis;
    long cells = 1;
    for (int i = 0; i < d; ++i) cells *= grid_per_axis;
    long hit = 0, in_shell = 0;
    std::vector<int> idx(static_cast<size_t>(d), 0);
    for (long c = 0; c < cells; ++c) {
        std::vector<double> pt(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) pt[static_cast<size_t>(i)] = (idx[static_cast<size_t>(i)] + 0.5) * h;
        int e = excess(pt);
        if (e >= 0) ++in_shell;
        if (e == 1) ++hit;
        for (int i = d - 1; i >= 0; --i) {
            if (++idx[static_cast<size_t>(i)] < grid_per_axis) break;
            idx[static_cast<size_t>(i)] = 0;
        }
    }
    double cell_vol = std::pow(h, d);
    ShellMeasure out;
    out.grid_estimate = hit * cell_vol;
    out.shell_volume = in_shell * cell_vol;
    // Monte-Carlo cross-estimate on the same indicator
    SplitMix rng(seed);
    long mc_hit = 0, mc_in = 0;
    const long mc_n = 200000;
    for (long k = 0; k < mc_n; ++k) {
        std::vector<double> pt(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) pt[static_cast<size_t>(i)] = rng.next_range(0.0, 2.0);
        int e = excess(pt);
        if (e >= 0) ++mc_in;
        if (e == 1) ++mc_hit;
    }
    out.mc_estimate = std::pow(2.0, d) * static_cast<double>(mc_hit) / mc_n;
    return out;
}

struct SharpnessConfig {
    double p = 8.0;
    double lambda = 0.0;
    AlphaParam alpha = AlphaParam::constant(0.5, 2);
    std::vector<long> mu_sequence{64, 256, 1024};
    double threshold_c = 0.0;  // exceedance constant c (fixture-calibrated)
    int grid_per_axis = 512;
    int radial_points = 40000; // for L^p norms
    int window = 0;            // phihat truncation window (0 = auto)
    std::uint64_t seed = 11;

    double lambda_p() const { return lambda_critical(p, alpha.dim()); }
    bool divergence_regime() const { return lambda < 0.5 * lambda_p(); }

    void validate() const {
        if (alpha.dim() < 2)
            throw domain_error("sharpness: the divergence construction needs d >= 2 "
                               "(p > 2d/(d-1) degenerates at d = 1)");
        if (!(p > 2.0 * alpha.dim() / (alpha.dim() - 1.0)))
            throw domain_error("sharpness: requires p > 2d/(d-1)");
        for (size_t i = 1; i < mu_sequence.size(); ++i)
            if (mu_sequence[i] < 4 * mu_sequence[i - 1])
                throw domain_error("sharpness: mu sequence must grow by factor >= 4");
    }
};

/// ||g_mu||_{L^p(R_+^d)} by exact Dirichlet angular integral times truncated
/// radial quadrature: int |g|^p = AngInt * int_0^rmax |H(r^2)|^p r^{c} dr with
/// c = p sum(alpha_i + 1/2) + d - 1 and H the radial profile.
inline double gk_lp_norm(long mu, const AlphaParam& alpha, double p, int radial_points,
                         int window) {
    const int d = alpha.dim();
    double csum = 0.0, ang_log = 0.0;
    for (int i = 0; i < d; ++i) {
        double c_i = p * (alpha[i] + 0.5);
        csum += c_i;
        // angular orthant integral: prod Gamma((c_i+1)/2) / (2^{d-1} Gamma((sum c_i + d)/2))
        ang_log += std::lgamma(0.5 * (c_i + 1.0));
        ang_log += 0.5 * p * (std::log(2.0) - std::lgamma(alpha[i] + 1.0)); // |Ang| consts
    }
    ang_log -= (d - 1) * std::log(2.0) + std::lgamma(0.5 * (csum + d));
    double ang = std::exp(ang_log);
    double rmax = 2.0 * std::sqrt(static_cast<double>(mu)) + 12.0;
    double acc = 0.0;
    int n_max = static_cast<int>(mu) + window;
    for (int i = 0; i < radial_points; ++i) {
        double r = (i + 0.5) * rmax / radial_points;
        double rho = r * r;
        auto rad = g_level_radial_seq(n_max, alpha, rho);
        complex_t s(0.0, 0.0);
        for (int n = std::max(0L, mu - window); n <= n_max; ++n)
            s += phi_bump_fourier_int(n - mu) * rad[static_cast<size_t>(n)];
        acc += std::pow(std::abs(s), p) * std::pow(r, csum + d - 1.0);
    }
    acc *= rmax / radial_points;
    return std::pow(ang * acc, 1.0 / p);
}

struct DivergencePerK {
    long mu = 0;
    double gk_norm_p = 0.0;
    double threshold = 0.0;
    double exceed_measure = 0.0;
    double exceed_measure_mc = 0.0;
    // single-term statistic: measure of {S_*^lambda f_k >= c mu^{lambda(p)/2}}
    double critical_bar = 0.0;
    double single_term_measure = 0.0;
};

struct DivergenceReport {
    std::vector<DivergencePerK> per_k;
    double shell_volume = 0.0;
    bool divergence_regime = false;
    double lambda = 0.0, lambda_p = 0.0;
    bool pass = false; // caller fills against the fixture constant
};

/// Desk-scale surrogate of the divergence construction: f = sum_k 2^{-k} f_k,
/// f_k = g_{mu_k}/||g_{mu_k}||_p. Reports (i) exceedance measures of the
/// maximal function of f on the shell at thresholds c 2^{-k} mu_k^{-lambda+lambda(p)/2}
/// and (ii) the per-term statistic |{S_*^lambda f_k >= c mu_k^{lambda(p)/2}}|,
/// whose decay under lambda > lambda(p)/2 is the regime contrast visible at
/// this surrogate scale.
inline DivergenceReport divergence_experiment(const SharpnessConfig& cfg) {
    cfg.validate();
    DivergenceReport rep;
    rep.lambda = cfg.lambda;
    rep.lambda_p = cfg.lambda_p();
    rep.divergence_regime = cfg.divergence_regime();
    const int d = cfg.alpha.dim();
    const size_t K = cfg.mu_sequence.size();
    int window = cfg.window > 0 ? cfg.window : phi_fourier_window(1e-7);

    long n_max = cfg.mu_sequence.back() + window;
    std::vector<double> e_n(static_cast<size_t>(n_max) + 1);
    for (long n = 0; n <= n_max; ++n)
        e_n[static_cast<size_t>(n)] = eigenvalue(static_cast<int>(n), cfg.alpha);

    // per-term coefficients gamma_k(n) = phihat(n - mu_k)/||g_k||_p and the sum
    std::vector<double> norms(K);
    std::vector<std::vector<complex_t>> gam(K + 1,
        std::vector<complex_t>(static_cast<size_t>(n_max) + 1, complex_t(0.0, 0.0)));
    std::vector<std::pair<long, long>> span(K + 1, {n_max, 0});
    for (size_t k = 0; k < K; ++k) {
        long mu = cfg.mu_sequence[k];
        norms[k] = gk_lp_norm(mu, cfg.alpha, cfg.p, cfg.radial_points, window);
        long lo = std::max(0L, mu - window), hi = mu + window;
        span[k] = {lo, hi};
        for (long n = lo; n <= hi; ++n)
            gam[k][static_cast<size_t>(n)] = phi_bump_fourier_int(n - mu) / norms[k];
        double wk = std::pow(2.0, -static_cast<double>(k + 1));
        for (long n = lo; n <= hi; ++n)
            gam[K][static_cast<size_t>(n)] += wk * gam[k][static_cast<size_t>(n)];
        span[K].first = std::min(span[K].first, lo);
        span[K].second = std::max(span[K].second, hi);
    }

    std::vector<double> r_grid;
    {
        double lo = 0.9 * std::sqrt(e_n[0]);
        double hi = 1.1 * std::sqrt(e_n[static_cast<size_t>(n_max)]);
        for (double r = lo; r <= hi; r *= 1.01) r_grid.push_back(r);
        for (long n = 0; n <= n_max; ++n)
            r_grid.push_back(std::nextafter(std::sqrt(e_n[static_cast<size_t>(n)]), 2.0 * hi));
        std::sort(r_grid.begin(), r_grid.end());
    }

    // sup_R tables over rho in [1,4] for each field (K single terms + the sum)
    const int nr = 2048;
    std::vector<std::vector<double>> sup(K + 1, std::vector<double>(static_cast<size_t>(nr) + 1));
    std::vector<double> pow_tab;
    const int PT = 8192;
    if (cfg.lambda > 0.0) {
        pow_tab.assign(PT + 1, 0.0);
        for (int q = 0; q <= PT; ++q)
            pow_tab[static_cast<size_t>(q)] = std::pow(static_cast<double>(q) / PT, cfg.lambda);
    }
    auto powl = [&](double u) {
        double q = u * PT;
        int j = std::min(PT - 1, static_cast<int>(q));
        double f = q - j;
        return (1.0 - f) * pow_tab[static_cast<size_t>(j)] +
               f * pow_tab[static_cast<size_t>(j) + 1];
    };
    for (int i = 0; i <= nr; ++i) {
        double rho = 1.0 + 3.0 * i / nr;
        auto rad = g_level_radial_seq(static_cast<int>(n_max), cfg.alpha, rho);
        for (size_t fld = 0; fld <= K; ++fld) {
            auto [lo, hi] = span[fld];
            double best = 0.0;
            if (cfg.lambda == 0.0) {
                // the R grid has a point past every crossing: every partial sum is realized
                complex_t run(0.0, 0.0);
                for (long n = lo; n <= hi; ++n) {
                    run += gam[fld][static_cast<size_t>(n)] * rad[static_cast<size_t>(n)];
                    best = std::max(best, std::abs(run));
                }
            } else {
                for (double R : r_grid) {
                    double R2 = R * R;
                    if (R2 <= e_n[static_cast<size_t>(lo)]) continue;
                    complex_t sum(0.0, 0.0);
                    for (long n = lo; n <= hi; ++n) {
                        double u = 1.0 - e_n[static_cast<size_t>(n)] / R2;
                        if (u <= 0.0) break;
                        sum += powl(u) * gam[fld][static_cast<size_t>(n)] *
                               rad[static_cast<size_t>(n)];
                    }
                    best = std::max(best, std::abs(sum));
                }
            }
            sup[fld][static_cast<size_t>(i)] = best;
        }
    }
    auto sup_at = [&](size_t fld, double rho) {
        double u = (rho - 1.0) / 3.0 * nr;
        int i = std::min(nr - 1, static_cast<int>(u));
        double f = u - i;
        return (1.0 - f) * sup[fld][static_cast<size_t>(i)] +
               f * sup[fld][static_cast<size_t>(i) + 1];
    };

    // shell measures: deterministic midpoint grid + seeded MC cross-estimate
    for (size_t k = 0; k < K; ++k) {
        long mu = cfg.mu_sequence[k];
        DivergencePerK row;
        row.mu = mu;
        row.gk_norm_p = norms[k];
        row.threshold = cfg.threshold_c * std::pow(2.0, -static_cast<double>(k + 1)) *
                        std::pow(static_cast<double>(mu), -cfg.lambda + 0.5 * rep.lambda_p);
        row.critical_bar =
            cfg.threshold_c * std::pow(static_cast<double>(mu), 0.5 * rep.lambda_p);
        double h = 2.0 / cfg.grid_per_axis;
        long cells = 1;
        for (int i = 0; i < d; ++i) cells *= cfg.grid_per_axis;
        long hit_sum = 0, hit_single = 0, in_shell = 0;
        std::vector<int> idx(static_cast<size_t>(d), 0);
        for (long c = 0; c < cells; ++c) {
            std::vector<double> pt(static_cast<size_t>(d));
            for (int i = 0; i < d; ++i)
                pt[static_cast<size_t>(i)] = (idx[static_cast<size_t>(i)] + 0.5) * h;
            double n2 = 0.0;
            for (double vv : pt) n2 += vv * vv;
            if (n2 >= 1.0 && n2 <= 4.0) {
                ++in_shell;
                EvalPoint xp(pt);
                double ang = angular_factor(cfg.alpha, xp);
                if (ang * sup_at(K, n2) >= row.threshold) ++hit_sum;
                if (ang * sup_at(k, n2) >= row.critical_bar) ++hit_single;
            }
            for (int i = d - 1; i >= 0; --i) {
                if (++idx[static_cast<size_t>(i)] < cfg.grid_per_axis) break;
                idx[static_cast<size_t>(i)] = 0;
            }
        }
        double cell_vol = std::pow(h, d);
        row.exceed_measure = hit_sum * cell_vol;
        row.single_term_measure = hit_single * cell_vol;
        rep.shell_volume = in_shell * cell_vol;
        SplitMix rng(cfg.seed + k);
        long mc_hit = 0;
        const long mc_n = 100000;
        for (long t = 0; t < mc_n; ++t) {
            std::vector<double> pt(static_cast<size_t>(d));
            for (int i = 0; i < d; ++i) pt[static_cast<size_t>(i)] = rng.next_range(0.0, 2.0);
            double n2 = 0.0;
            for (double vv : pt) n2 += vv * vv;
            if (n2 < 1.0 || n2 > 4.0) continue;
            EvalPoint xp(pt);
            if (angular_factor(cfg.alpha, xp) * sup_at(K, n2) >= row.threshold) ++mc_hit;
        }
        row.exceed_measure_mc = std::pow(2.0, d) * static_cast<double>(mc_hit) / mc_n;
        rep.per_k.push_back(row);
    }
    return rep;
}

} // namespace laglab
