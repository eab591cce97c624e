#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "laglab/nq.hpp"
#include "laglab/quadrature.hpp"
#include "laglab/rng.hpp"
#include "laglab/spectral.hpp"
#include "laglab/types.hpp"

namespace laglab {

/// Weighted Gram matrix of the level-n eigenfunctions:
/// A_{mu nu} = sum_i w_i (1+|x_i|)^{-beta} phi_mu(x_i) phi_nu(x_i).
inline std::vector<std::vector<double>> weighted_level_gram(int n, const AlphaParam& alpha,
                                                            double beta,
                                                            const QuadratureRule& rule,
                                                            const BasisTable& table) {
    auto mus = enumerate_level(n, alpha.dim());
    const size_t m = mus.size();
    std::vector<std::vector<double>> phi(m);
    for (size_t k = 0; k < m; ++k) phi[k] = table.basis_on_nodes(mus[k]);
    std::vector<double> wt(rule.size());
    for (size_t i = 0; i < rule.size(); ++i)
        wt[i] = rule.weights[i] * std::pow(1.0 + rule.nodes[i].norm(), -beta);
    std::vector<std::vector<double>> A(m, std::vector<double>(m, 0.0));
    for (size_t r = 0; r < m; ++r)
        for (size_t c = r; c < m; ++c) {
            double s = 0.0;
            for (size_t i = 0; i < rule.size(); ++i) s += wt[i] * phi[r][i] * phi[c][i];
            A[r][c] = A[c][r] = s;
        }
    return A;
}

/// Top eigenvalue of a symmetric PSD matrix by power iteration.
inline double power_iteration_top(const std::vector<std::vector<double>>& A,
                                  double rel_tol = 1e-6, int max_iter = 10000,
                                  std::uint64_t seed = 7) {
    const size_t m = A.size();
    if (m == 0) throw domain_error("power_iteration_top: empty matrix");
    SplitMix rng(seed);
    std::vector<double> v(m), av(m);
    for (auto& x : v) x = rng.next_unit() - 0.5;
    double lam = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        double nv = 0.0;
        for (double x : v) nv += x * x;
        nv = std::sqrt(nv);
        for (auto& x : v) x /= nv;
        for (size_t r = 0; r < m; ++r) {
            double s = 0.0;
            for (size_t c = 0; c < m; ++c) s += A[r][c] * v[c];
            av[r] = s;
        }
        double lam_new = 0.0;
        for (size_t r = 0; r < m; ++r) lam_new += v[r] * av[r];
        std::swap(v, av);
        if (it > 0 && std::abs(lam_new - lam) <= rel_tol * std::abs(lam_new)) return lam_new;
        lam = lam_new;
    }
    throw numerical_error("power_iteration_top: no convergence within iteration budget");
}

/// ||P_n||_{L^2 -> L^2((1+|x|)^{-beta})}: square root of the top eigenvalue of
/// the weighted level Gram matrix (P_n has rank C(n+d-1, d-1)).
inline double projection_operator_norm(int n, const AlphaParam& alpha, double beta,
                                       const QuadratureRule& rule, const BasisTable& table) {
    if (rule.order < 2 * n + 16)
        throw domain_error("projection_operator_norm: rule order must be >= 2n + 16");
    auto A = weighted_level_gram(n, alpha, beta, rule, table);
    return std::sqrt(power_iteration_top(A));
}

/// d = 1 fast path sharing code with the general case is pointless: the level
/// Gram is 1x1 and the norm is a single weighted integral of phi_n^2.
inline double projection_operator_norm_1d(int n, double a, double beta,
                                          const QuadratureRule& rule) {
    double s = 0.0;
    for (size_t i = 0; i < rule.size(); ++i) {
        double p = laguerre_function_1d(n, a, rule.nodes[i][0]);
        s += rule.weights[i] * std::pow(1.0 + rule.nodes[i][0], -beta) * p * p;
    }
    return std::sqrt(s);
}

struct TraceCheckResult {
    double lhs; // max over random unit f of the weighted norm^2 of F(sqrt(L)) f
    double rhs; // N ||d_N F||^2_{N^2,2} (beta > 1) or the beta <= 1 variant
    double ratio;
};

/// Compares the weighted energy of F(sqrt(L)) f against the cellwise-sup norm
/// bound, for F supported in [N/4, N]. Levels outside the support window of F
/// contribute nothing and are skipped; the random f live on the window.
inline TraceCheckResult extended_trace_check(const std::function<double(double)>& F, int N,
                                             const AlphaParam& alpha, double beta,
                                             double eps = 0.25, int restarts = 20,
                                             std::uint64_t seed = 2024) {
    if (alpha.dim() != 1)
        throw domain_error("extended_trace_check: implemented for d = 1 probes");
    const double a = alpha[0];
    // levels with sqrt(e_n) in [N/4, N]
    double e_lo = N * N / 16.0, e_hi = static_cast<double>(N) * N;
    int n_lo = std::max(0, static_cast<int>(std::floor((e_lo - 2.0 * a - 2.0) / 4.0)));
    int n_hi = static_cast<int>(std::ceil((e_hi - 2.0 * a - 2.0) / 4.0));
    // support check
    for (int probe = 0; probe <= 64; ++probe) {
        double s = probe * N / 64.0;
        if ((s < N / 4.0 || s > N) && std::abs(F(s)) > 0.0)
            throw domain_error("extended_trace_check: F not supported in [N/4, N]");
    }
    const int win = n_hi - n_lo + 1;
    std::vector<double> Fvals(static_cast<size_t>(win));
    AlphaParam a1 = alpha;
    for (int n = n_lo; n <= n_hi; ++n)
        Fvals[static_cast<size_t>(n - n_lo)] = F(std::sqrt(eigenvalue(n, a1)));

    QuadratureRule rule = build_rule(a1, 2 * n_hi + 16);
    // random unit coefficient vectors on the window
    SplitMix rng(seed);
    std::vector<std::vector<complex_t>> cs(static_cast<size_t>(restarts),
                                           std::vector<complex_t>(static_cast<size_t>(win)));
    for (auto& c : cs) {
        double nrm = 0.0;
        for (auto& z : c) {
            double u1 = rng.next_unit(), u2 = rng.next_unit();
            double r = std::sqrt(-2.0 * std::log(u1));
            z = complex_t(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
            nrm += std::norm(z);
        }
        nrm = std::sqrt(nrm);
        for (auto& z : c) z /= nrm;
    }
    std::vector<double> acc(static_cast<size_t>(restarts), 0.0);
    for (size_t i = 0; i < rule.size(); ++i) {
        double x = rule.nodes[i][0];
        auto seq = laguerre_function_1d_seq(n_hi, a, x);
        double wt = rule.weights[i] * std::pow(1.0 + x, -beta);
        for (int r = 0; r < restarts; ++r) {
            complex_t s(0.0, 0.0);
            for (int n = n_lo; n <= n_hi; ++n)
                s += cs[static_cast<size_t>(r)][static_cast<size_t>(n - n_lo)] *
                     Fvals[static_cast<size_t>(n - n_lo)] * seq[static_cast<size_t>(n)];
            acc[static_cast<size_t>(r)] += wt * std::norm(s);
        }
    }
    double lhs = 0.0;
    for (double v : acc) lhs = std::max(lhs, v);

    auto dNF = [&](double t) { return F(N * t); };
    double rhs;
    if (beta > 1.0) {
        double nn = nq_norm(dNF, N, 2.0);
        rhs = N * nn * nn;
    } else {
        double q = 2.0 * (1.0 + eps) / beta;
        double nn = nq_norm(dNF, N, q);
        rhs = std::pow(static_cast<double>(N), beta / (1.0 + eps)) * nn * nn;
    }
    return {lhs, rhs, rhs > 0.0 ? lhs / rhs : 0.0};
}

/// Weighted L^2((1+|x|)^{beta}) norm of the dyadic square aggregate
/// (sum_k |psi(2^{-k} sqrt(L)) f|^2)^{1/2}, k over the truncated spectrum.
inline double littlewood_paley_energy(const SpectralCoefficients& c,
                                      const std::function<double(double)>& psi, double beta,
                                      const BasisTable& table) {
    const QuadratureRule& rule = table.rule();
    if (!(beta > -c.alpha().dim() && beta < c.alpha().dim()))
        throw domain_error("littlewood_paley_energy: beta must lie in (-d, d)");
    auto rows = level_values_on_rule(c, table);
    double s_lo = std::sqrt(eigenvalue(0, c.alpha()));
    double s_hi = std::sqrt(eigenvalue(c.max_level(), c.alpha()));
    int k_lo = static_cast<int>(std::floor(std::log2(s_lo))) - 1;
    int k_hi = static_cast<int>(std::ceil(std::log2(s_hi))) + 1;
    double total = 0.0;
    std::vector<complex_t> piece(rule.size());
    for (size_t i = 0; i < rule.size(); ++i) {
        double sq = 0.0;
        for (int k = k_lo; k <= k_hi; ++k) {
            complex_t s(0.0, 0.0);
            for (int n = 0; n <= c.max_level(); ++n) {
                double m = psi(std::sqrt(eigenvalue(n, c.alpha())) * std::pow(2.0, -k));
                if (m != 0.0) s += m * rows[static_cast<size_t>(n)][i];
            }
            sq += std::norm(s);
        }
        total += rule.weights[i] * std::pow(1.0 + rule.nodes[i].norm(), beta) * sq;
    }
    return std::sqrt(total);
}

} // namespace laglab
