#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "laglab/bessel.hpp"
#include "laglab/laguerre.hpp"
#include "laglab/quadrature.hpp"

using namespace laglab;

namespace {
double rel_err(double got, double want) {
    if (want == 0.0) return std::abs(got);
    return std::abs(got - want) / std::abs(want);
}
} // namespace

TEST_CASE("explicit sum oracle at hand-checked points") {
    CHECK(laguerre_poly_explicit(0, 0.7, 3.1) == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(laguerre_poly_explicit(1, 0.5, 2.0) == Catch::Approx(-0.5).epsilon(1e-14));
    // n=2, a=0: 1 - 2x + x^2/2
    CHECK(laguerre_poly_explicit(2, 0.0, 1.0) == Catch::Approx(-0.5).epsilon(1e-14));
    CHECK_THROWS_AS(laguerre_poly_explicit(3, -1.5, 1.0), domain_error);
}

TEST_CASE("recurrence agrees with explicit oracle") {
    CHECK(laguerre_recurrence(0, 0.3, 5.0) == std::vector<double>{1.0});
    auto v = laguerre_recurrence(2, 0.0, 1.0);
    CHECK(v[1] == Catch::Approx(0.0).margin(1e-15));
    CHECK(v[2] == Catch::Approx(-0.5).epsilon(1e-14));

    for (double a : {-0.5, 0.0, 0.5, 2.0}) {
        for (double x : {0.01, 1.0, 10.0, 100.0}) {
            auto rec = laguerre_recurrence(50, a, x);
            for (int n : {1, 5, 17, 34, 50}) {
                double oracle = laguerre_poly_explicit(n, a, x);
                if (std::abs(oracle) < 1e-200) continue;
                INFO("n=" << n << " a=" << a << " x=" << x);
                CHECK(rel_err(rec[static_cast<size_t>(n)], oracle) < 1e-10);
            }
        }
    }
}

TEST_CASE("normalized Laguerre values") {
    CHECK(normalized_laguerre(0, 0.0, 0.0) == 1.0);
    // NL_0^2(1) = e^{-1/2} / sqrt(Gamma(3))
    double want = std::exp(-0.5) / std::sqrt(2.0);
    CHECK(normalized_laguerre(0, 2.0, 1.0) == Catch::Approx(want).epsilon(1e-14));

    // direct definition cross-check against the oracle polynomial
    for (double a : {-0.5, 0.25, 1.5}) {
        for (double x : {0.2, 3.0, 22.0}) {
            for (int n : {0, 3, 12, 40}) {
                double lg = laguerre_poly_explicit(n, a, x);
                double def = std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(n + a + 1.0)) -
                                      0.5 * x + 0.5 * a * std::log(x)) *
                             lg;
                INFO("n=" << n << " a=" << a << " x=" << x);
                CHECK(rel_err(normalized_laguerre(n, a, x), def) < 1e-9);
            }
        }
    }
}

TEST_CASE("normalized recurrence survives deep underflow of the seed") {
    // NL_0(u) underflows for u beyond ~1420 but values near the turning point
    // nu = 4n+2a+2 are order nu^{-1/3}; the scaled recurrence must carry the
    // magnitude through the underflowed stretch.
    double nu = 4.0 * 512 + 2.0 * 1.0 + 2.0;
    double v = normalized_laguerre(512, 1.0, nu);
    CHECK(std::abs(v) > 1e-3);
    CHECK(std::abs(v) < 1.0);
    // mid-bulk amplitude scale (x nu)^{-1/4}
    double vb = normalized_laguerre(512, 1.0, 0.5 * nu);
    CHECK(std::abs(vb) < 3.0 * std::pow(0.5 * nu * nu, -0.25));
    CHECK(std::abs(vb) > 0.01 * std::pow(0.5 * nu * nu, -0.25));
    // beyond the turning point the true value is ~e^{-280}; the forward
    // recurrence only guarantees it stays absolutely negligible
    CHECK(std::abs(normalized_laguerre(512, 1.0, 2500.0)) < 1e-20);

    bool uf = false;
    double tail = normalized_laguerre(3, 0.5, 4000.0, &uf);
    CHECK(tail == 0.0);
    CHECK(uf);
}

TEST_CASE("one-dimensional eigenfunctions") {
    double g32 = std::tgamma(1.5);
    double want = std::sqrt(2.0 / g32) * std::exp(-0.5);
    CHECK(laguerre_function_1d(0, 0.5, 1.0) == Catch::Approx(want).epsilon(1e-13));

    SECTION("unit L2 norm under the adapted rule") {
        auto rule = build_rule(AlphaParam::constant(0.25, 1), 32);
        double s = 0.0;
        for (size_t i = 0; i < rule.size(); ++i) {
            double p = laguerre_function_1d(3, 0.25, rule.nodes[i][0]);
            s += rule.weights[i] * p * p;
        }
        CHECK(s == Catch::Approx(1.0).epsilon(1e-8));
    }

    SECTION("Hermite reduction at a = -1/2") {
        // phi_1^{-1/2} is proportional to the second harmonic-oscillator
        // eigenfunction h_2; ratio constant across x.
        auto h = [](int m, double x) {
            double p0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
            if (m == 0) return p0;
            double p1 = std::sqrt(2.0) * x * p0;
            for (int k = 1; k < m; ++k) {
                double p2 = std::sqrt(2.0 / (k + 1.0)) * x * p1 -
                            std::sqrt(k / (k + 1.0)) * p0;
                p0 = p1;
                p1 = p2;
            }
            return p1;
        };
        double r0 = laguerre_function_1d(1, -0.5, 0.5) / h(2, 0.5);
        for (double x : {1.0, 2.0}) {
            double r = laguerre_function_1d(1, -0.5, x) / h(2, x);
            CHECK(rel_err(r, r0) < 1e-9);
        }
    }

    SECTION("continuity extension at x = 0") {
        CHECK(laguerre_function_1d(4, 0.3, 0.0) == 0.0);
        double lim = laguerre_function_1d(2, -0.5, 0.0);
        double near = laguerre_function_1d(2, -0.5, 1e-8);
        CHECK(rel_err(near, lim) < 1e-6);
    }
}

TEST_CASE("multi-dimensional eigenfunction is a product") {
    AlphaParam alpha({0.5, 0.5});
    MultiIndex mu({0, 0});
    EvalPoint x({1.0, 1.0});
    double one_d = laguerre_function_1d(0, 0.5, 1.0);
    CHECK(laguerre_function_md(mu, alpha, x) ==
          Catch::Approx(one_d * one_d).epsilon(1e-14));
    CHECK_THROWS_AS(laguerre_function_md(MultiIndex({1}), alpha, x), dimension_error);
}

TEST_CASE("generating identity") {
    auto g = generating_check(0.0, 0.0, 0.5, 40);
    CHECK(g.closed == Catch::Approx(2.0).epsilon(1e-14));
    CHECK(rel_err(g.partial, 2.0) < 1e-9);

    auto g2 = generating_check(0.5, 1.0, 0.3, 60);
    CHECK(std::abs(g2.partial - g2.closed) < 1e-10);
    auto g3 = generating_check(-0.5, 2.0, -0.5, 60);
    CHECK(std::abs(g3.partial - g3.closed) < 1e-10);
    CHECK_THROWS_AS(generating_check(0.0, 1.0, 1.0, 10), domain_error);

    SECTION("tail-bound property across a small sweep") {
        for (double a : {-0.5, 0.0, 1.5}) {
            for (double x : {0.0, 1.0, 4.0}) {
                for (double t : {-0.9, -0.4, 0.35, 0.9}) {
                    int N = 60;
                    auto r = generating_check(a, x, t, N);
                    auto l = laguerre_recurrence(N + 20, a, x);
                    double lmax = 0.0;
                    for (double v : l) lmax = std::max(lmax, std::abs(v));
                    double bound = 10.0 * std::pow(std::abs(t), N + 1) /
                                   (1.0 - std::abs(t)) * lmax;
                    INFO("a=" << a << " x=" << x << " t=" << t);
                    CHECK(std::abs(r.partial - r.closed) <= bound + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("laguerre value at zero") {
    CHECK(laguerre_at_zero(0, 0.7) == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(laguerre_at_zero(2, 0.0) == Catch::Approx(1.0).epsilon(1e-13));
    CHECK(laguerre_at_zero(3, 1.0) == Catch::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("modified Bessel I") {
    CHECK(modified_bessel_i(0.0, 0.0) == 1.0);
    CHECK(modified_bessel_i(1.3, 0.0) == 0.0);
    double want = std::sqrt(2.0 / M_PI) * std::sinh(1.0);
    CHECK(modified_bessel_i(0.5, 1.0) == Catch::Approx(want).epsilon(1e-13));

    SECTION("against the standard library") {
        for (double nu : {0.0, 0.3, 1.0, 2.7}) {
            for (double z : {0.5, 5.0, 15.0, 25.0, 80.0}) {
                double got = modified_bessel_i(nu, z);
                double ref = std::cyl_bessel_i(nu, z);
                INFO("nu=" << nu << " z=" << z);
                CHECK(rel_err(got, ref) < 1e-11);
            }
        }
    }

    SECTION("scaled form and the e^z envelope") {
        for (double z : {0.1, 1.0, 10.0, 50.0}) {
            double v = std::sqrt(z) * modified_bessel_i_scaled(-0.5, z);
            // sqrt(z) I_{-1/2}(z) = sqrt(2/pi) cosh(z): scaled <= sqrt(2/pi)
            CHECK(v <= std::sqrt(2.0 / M_PI) + 1e-12);
            CHECK(v > 0.0);
        }
        // both branches agree at the switch point itself
        double ser = detail::bessel_i_series(1.2, 30.0, true);
        double asym = detail::bessel_i_asymptotic(1.2, 30.0, true);
        CHECK(rel_err(ser, asym) < 1e-12);
    }

    CHECK_THROWS_AS(modified_bessel_i(-0.8, 1.0), domain_error);
    CHECK(modified_bessel_i(-0.8, 1.0, true) > 0.0);
}
