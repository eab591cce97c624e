#pragma once

#include <cmath>
#include <vector>

#include "laglab/asymptotics.hpp"
#include "laglab/bump.hpp"
#include "laglab/fixtures.hpp"
#include "laglab/heat.hpp"
#include "laglab/laguerre.hpp"
#include "laglab/opnorm.hpp"
#include "laglab/potential.hpp"
#include "laglab/sharpness.hpp"

namespace laglab {

// One deterministic pass producing every calibrated constant. The output file
// is checked in; `lab verify-fixtures` recomputes and compares hashes, and the
// experiments refuse to run against a file whose hash differs from the one
// compiled into the binary.

namespace calib {

inline const std::vector<int>& sweep_levels() {
    static const std::vector<int> v{0,  1,  2,  3,  4,   6,   8,   12,  16, 24,
                                    32, 48, 64, 96, 128, 192, 256, 384, 512};
    return v;
}
inline const std::vector<double>& sweep_types() {
    static const std::vector<double> v{-0.5, 0.0, 1.0, 3.0};
    return v;
}

/// max over the reference sweep of |NL_n^a(x)| / envelope(x) with C = 1.
/// Forward-recurrence points cover the first three regimes; the exponential
/// tail is swept with the 50-digit explicit sum (n <= 48), where the forward
/// recurrence cannot resolve values under its contamination floor.
inline double envelope_sweep_max(double gamma) {
    double worst = 0.0;
    for (double a : sweep_types()) {
        for (int n : sweep_levels()) {
            double nu = 4.0 * n + 2.0 * a + 2.0;
            EnvelopeConstants k{1.0, gamma, 1.0};
            auto ratio_at = [&](double x, double val) {
                double env = asymptotic_envelope(n, a, x, k).bound;
                return env > 0.0 ? std::abs(val) / env : 0.0;
            };
            for (int i = 0; i < 30; ++i) { // below 1/nu
                double x = (1e-3 / nu) * std::pow(1000.0, i / 29.0);
                worst = std::max(worst, ratio_at(x, normalized_laguerre(n, a, x)));
            }
            for (int i = 0; i < 120; ++i) { // bulk
                double x = (1.0 / nu) * std::pow(nu * nu / 2.0, i / 119.0);
                worst = std::max(worst, ratio_at(x, normalized_laguerre(n, a, x)));
            }
            for (int i = 0; i < 120; ++i) { // transition
                double x = 0.5 * nu + (0.999 * nu) * i / 119.0;
                worst = std::max(worst, ratio_at(x, normalized_laguerre(n, a, x)));
            }
            if (n <= 48) { // exponential tail, oracle route
                for (int i = 0; i < 24; ++i) {
                    double x = 1.501 * nu + (2.5 * nu) * i / 23.0;
                    double l = laguerre_poly_explicit(n, a, x);
                    double val = std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(n + a + 1.0)) -
                                          0.5 * x + 0.5 * a * std::log(x)) *
                                 l;
                    worst = std::max(worst, ratio_at(x, val));
                }
            }
        }
    }
    return worst;
}

/// max over the oscillatory window of |NL - main| / budget with osc_C = 1.
inline double oscillatory_sweep_max() {
    double worst = 0.0;
    for (double a : sweep_types()) {
        for (int n : {8, 16, 32, 64, 128, 256, 512}) {
            double nu = 4.0 * n + 2.0 * a + 2.0;
            double x_lo = std::max(1.0, 0.02 * nu);
            double x_hi = nu - std::cbrt(nu) - 1e-9;
            if (x_hi <= x_lo) continue;
            for (int i = 0; i < 150; ++i) {
                double x = x_lo + (x_hi - x_lo) * i / 149.0;
                auto approx = oscillatory_approx(n, a, x, {1.0, 0.1, 1.0});
                double val = normalized_laguerre(n, a, x);
                worst = std::max(worst, std::abs(val - approx.main) / approx.error_budget);
            }
        }
    }
    return worst;
}

inline std::vector<std::pair<EvalPoint, EvalPoint>> heat_probe_pairs(int d, int count) {
    auto pairs = sobol_pairs(d, count, 6.0);
    // near-diagonal probes stress the small-|x-y| side of the bound
    for (int i = 0; i < count / 8; ++i) {
        auto [x, y] = pairs[static_cast<size_t>(i)];
        pairs.emplace_back(x, EvalPoint(x.coords));
    }
    return pairs;
}

inline double heat_domination_max() {
    const std::vector<double> ts{0.1, 0.5, 1.0, 2.0};
    double worst = 0.0;
    for (const AlphaParam& a :
         {AlphaParam({-0.5}), AlphaParam({0.5, 1.5}), AlphaParam({0.0, 0.5, 1.0})}) {
        auto rep = gaussian_domination_probe(ts, heat_probe_pairs(a.dim(), 2000), a);
        worst = std::max(worst, rep.max_ratio);
    }
    return worst;
}

inline double phi_domination_max() {
    AlphaParam a({0.5, 1.5});
    double worst = 0.0;
    for (double beta : {0.5, 1.0, 2.0}) {
        auto rep = phi_domination_probe(beta, sobol_pairs(2, 1000, 4.0), a);
        worst = std::max(worst, rep.max_ratio);
    }
    return worst;
}

struct SchurMax {
    double row = 0.0, col = 0.0;
};

inline SchurMax schur_sweep_max() {
    AlphaParam a({0.5});
    SchurMax m;
    for (double beta : {0.5, 1.0, 2.0}) {
        for (double x : {0.5, 2.0, 8.0, 20.0}) {
            auto s = schur_integrals(beta, EvalPoint::scalar(x), a);
            m.row = std::max(m.row, s.row);
            m.col = std::max(m.col, s.col);
        }
    }
    return m;
}

inline double lp_energy_ratio_max() {
    AlphaParam a({0.5});
    const int N = 64;
    QuadratureRule rule = build_rule(a, 2 * N + 16);
    BasisTable table(rule, a, N);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        auto c = random_coefficients(a, N, 1000 + static_cast<std::uint64_t>(trial));
        double e = littlewood_paley_energy(c, psi_bump, 0.0, table);
        worst = std::max(worst, e / std::sqrt(c.energy()));
    }
    return worst;
}

/// Median of |G_mu| / mu^{(|alpha|_1+d)/2 - 3/4} over the shell at mu = 256,
/// the scale the exceedance threshold hangs off.
inline double g_shell_median(const AlphaParam& alpha, long mu) {
    double scale = std::pow(static_cast<double>(mu),
                            0.5 * (alpha.l1() + alpha.dim()) - 0.75);
    SplitMix rng(99);
    std::vector<double> vals;
    for (int k = 0; k < 40000; ++k) {
        std::vector<double> pt(static_cast<size_t>(alpha.dim()));
        double n2 = 0.0;
        for (auto& v : pt) {
            v = rng.next_range(1e-12, 2.0);
            n2 += v * v;
        }
        if (n2 < 1.0 || n2 > 4.0) continue;
        EvalPoint x(pt);
        vals.push_back(std::abs(g_level(static_cast<int>(mu), alpha, x)) / scale);
    }
    std::nth_element(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(vals.size() / 2),
                     vals.end());
    return vals[vals.size() / 2];
}

} // namespace calib

inline Fixtures run_calibration() {
    Fixtures fx;
    const double gamma = 0.06;
    double env_max = calib::envelope_sweep_max(gamma);
    fx.set("envelope_C", 1.1 * env_max);
    fx.set("envelope_gamma", gamma);
    fx.set("envelope_sweep_max", env_max);
    double osc_max = calib::oscillatory_sweep_max();
    fx.set("osc_C", 1.1 * osc_max);
    fx.set("heat_gauss_C", 1.1 * calib::heat_domination_max());
    fx.set("phi_dom_C", 1.1 * calib::phi_domination_max());
    auto schur = calib::schur_sweep_max();
    fx.set("schur_row_C", 1.1 * schur.row);
    fx.set("schur_col_C", 1.1 * schur.col);
    fx.set("lp_energy_C", 1.1 * calib::lp_energy_ratio_max());
    fx.set("wave_c0", 1.0);
    // rapid-decay fixture for the projection identity (N = 4)
    double c4 = 0.0;
    for (int k = 32; k <= 128; ++k)
        c4 = std::max(c4, std::abs(phi_bump_fourier_int(k)) * std::pow(k, 4.0));
    fx.set("proj_decay_C4", 1.1 * c4);
    fx.set("g_shell_thr", 0.5 * calib::g_shell_median(AlphaParam({0.5, 0.5}), 256));
    // divergence fixtures: c chosen, C0 pinned from the lambda = 0 run
    const double sharp_c = 0.02;
    SharpnessConfig cfg;
    cfg.p = 8.0;
    cfg.lambda = 0.0;
    cfg.alpha = AlphaParam({0.5, 0.5});
    cfg.mu_sequence = {64, 256, 1024};
    cfg.threshold_c = sharp_c;
    cfg.grid_per_axis = 512;
    cfg.radial_points = 20000;
    auto rep = divergence_experiment(cfg);
    double m_min = 1e300;
    for (const auto& r : rep.per_k)
        m_min = std::min({m_min, r.exceed_measure, r.single_term_measure});
    fx.set("sharp_c", sharp_c);
    fx.set("sharp_C0", 0.5 * m_min);
    // sweep hash: digest of the raw observed maxima, proving the calibration
    // inputs have not drifted
    Fixtures sweep;
    sweep.set("env", env_max);
    sweep.set("osc", osc_max);
    sweep.set("sharp_m_min", m_min);
    fx.set("sweep_hash", static_cast<double>(sweep.hash() % 900719925474099ull));
    return fx;
}

} // namespace laglab
