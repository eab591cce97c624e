#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "laglab/quadrature.hpp"
#include "laglab/types.hpp"

namespace laglab {

/// All mu with |mu|_1 = n, d entries, lexicographic.
inline std::vector<MultiIndex> enumerate_level(int n, int d) {
    if (n < 0 || d < 1) throw domain_error("enumerate_level: n >= 0, d >= 1 required");
    std::vector<MultiIndex> out;
    out.reserve(static_cast<size_t>(level_count(n, d)));
    std::vector<int> cur(static_cast<size_t>(d), 0);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == d - 1) {
            cur[static_cast<size_t>(pos)] = rem;
            out.emplace_back(cur);
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            cur[static_cast<size_t>(pos)] = v;
            rec(pos + 1, rem - v);
        }
    };
    rec(0, n);
    return out;
}

/// e_n = 4n + 2|alpha|_1 + 2d.
inline double eigenvalue(int n, const AlphaParam& alpha) {
    if (n < 0) throw domain_error("eigenvalue: n >= 0 required");
    return 4.0 * n + 2.0 * alpha.l1() + 2.0 * alpha.dim();
}

/// Coefficients <f, phi_mu^alpha> for all |mu|_1 <= N, stored level-contiguous
/// in lexicographic order within each level.
class SpectralCoefficients {
  public:
    SpectralCoefficients(const AlphaParam& alpha, int max_level)
        : alpha_(alpha), max_level_(max_level) {
        offsets_.push_back(0);
        for (int n = 0; n <= max_level; ++n) {
            auto lvl = enumerate_level(n, alpha.dim());
            indices_.insert(indices_.end(), lvl.begin(), lvl.end());
            offsets_.push_back(indices_.size());
        }
        coeffs_.assign(indices_.size(), complex_t(0.0, 0.0));
    }

    const AlphaParam& alpha() const { return alpha_; }
    int max_level() const { return max_level_; }
    size_t size() const { return coeffs_.size(); }

    size_t level_offset(int n) const { return offsets_[static_cast<size_t>(n)]; }
    size_t level_size(int n) const {
        return offsets_[static_cast<size_t>(n) + 1] - offsets_[static_cast<size_t>(n)];
    }
    const MultiIndex& index_at(size_t i) const { return indices_[i]; }

    complex_t& operator[](size_t i) { return coeffs_[i]; }
    const complex_t& operator[](size_t i) const { return coeffs_[i]; }

    size_t find(const MultiIndex& mu) const {
        int n = mu.level();
        if (n > max_level_) throw domain_error("SpectralCoefficients::find: level out of range");
        auto b = indices_.begin() + static_cast<std::ptrdiff_t>(level_offset(n));
        auto e = indices_.begin() + static_cast<std::ptrdiff_t>(level_offset(n) + level_size(n));
        auto it = std::lower_bound(b, e, mu);
        if (it == e || !(*it == mu))
            throw domain_error("SpectralCoefficients::find: index not present");
        return static_cast<size_t>(it - indices_.begin());
    }

    complex_t at(const MultiIndex& mu) const { return coeffs_[find(mu)]; }
    void set(const MultiIndex& mu, complex_t v) {
        coeffs_[find(mu)] = v;
        energy_cached_ = false;
    }
    void mark_dirty() { energy_cached_ = false; }

    double energy() const {
        if (!energy_cached_) {
            double s = 0.0;
            for (const auto& c : coeffs_) s += std::norm(c);
            energy_ = s;
            energy_cached_ = true;
        }
        return energy_;
    }

  private:
    AlphaParam alpha_;
    int max_level_;
    std::vector<MultiIndex> indices_;
    std::vector<size_t> offsets_;
    std::vector<complex_t> coeffs_;
    mutable double energy_ = 0.0;
    mutable bool energy_cached_ = false;
};

enum class MultiplierArg { OfEigenvalue, OfSqrt };

/// Bounded spectral multiplier m applied per level as m(e_n) or m(sqrt(e_n)).
struct MultiplierSpec {
    std::function<complex_t(double)> m;
    MultiplierArg convention = MultiplierArg::OfEigenvalue;
    std::optional<std::pair<double, double>> support_hint;

    complex_t eval(double e) const {
        double arg = convention == MultiplierArg::OfEigenvalue ? e : std::sqrt(e);
        if (support_hint && (arg < support_hint->first || arg > support_hint->second))
            return complex_t(0.0, 0.0);
        return m(arg);
    }
};

/// Per-axis tables phi_k^{a}(x) for k <= n_max over the rule's axis nodes.
/// Keyed off the tensor structure; analyze/synthesize on rule nodes read these.
class BasisTable {
  public:
    BasisTable(const QuadratureRule& rule, const AlphaParam& alpha, int n_max)
        : rule_(&rule), n_max_(n_max) {
        if (rule.dim != alpha.dim()) throw dimension_error("BasisTable: dimension mismatch");
        tables_.resize(static_cast<size_t>(rule.dim));
        for (int ax = 0; ax < rule.dim; ++ax) {
            const auto& xs = rule.axis_nodes[static_cast<size_t>(ax)];
            auto& tab = tables_[static_cast<size_t>(ax)];
            tab.resize(xs.size());
            for (size_t i = 0; i < xs.size(); ++i)
                tab[i] = laguerre_function_1d_seq(n_max, alpha[ax], xs[i]);
        }
    }

    double value(const MultiIndex& mu, const std::vector<int>& node_idx) const {
        double p = 1.0;
        for (int ax = 0; ax < rule_->dim; ++ax)
            p *= tables_[static_cast<size_t>(ax)][static_cast<size_t>(node_idx[static_cast<size_t>(ax)])]
                        [static_cast<size_t>(mu[ax])];
        return p;
    }

    const QuadratureRule& rule() const { return *rule_; }
    int n_max() const { return n_max_; }

    /// Values of phi_mu at every rule node, tensor order.
    std::vector<double> basis_on_nodes(const MultiIndex& mu) const {
        std::vector<double> out(rule_->size(), 1.0);
        fill_product(mu, out);
        return out;
    }

  private:
    void fill_product(const MultiIndex& mu, std::vector<double>& out) const {
        size_t total = rule_->size();
        std::vector<size_t> stride(static_cast<size_t>(rule_->dim), 1);
        for (int ax = rule_->dim - 2; ax >= 0; --ax)
            stride[static_cast<size_t>(ax)] =
                stride[static_cast<size_t>(ax) + 1] *
                rule_->axis_nodes[static_cast<size_t>(ax) + 1].size();
        for (size_t i = 0; i < total; ++i) {
            double p = 1.0;
            size_t rem = i;
            for (int ax = 0; ax < rule_->dim; ++ax) {
                size_t ni = rem / stride[static_cast<size_t>(ax)];
                rem %= stride[static_cast<size_t>(ax)];
                p *= tables_[static_cast<size_t>(ax)][ni][static_cast<size_t>(mu[ax])];
            }
            out[i] = p;
        }
    }

    const QuadratureRule* rule_;
    int n_max_;
    std::vector<std::vector<std::vector<double>>> tables_; // [axis][node][k]
};

/// c_mu = <f, phi_mu> over the rule. Requires order >= 2N + 16 per axis.
inline SpectralCoefficients analyze(const GridFunction& f, const AlphaParam& alpha, int N,
                                    const BasisTable* table = nullptr) {
    const QuadratureRule& rule = *f.rule;
    if (rule.order < 2 * N + 16)
        throw domain_error("analyze: rule order must be >= 2N + 16 per axis");
    std::optional<BasisTable> local;
    if (!table) {
        local.emplace(rule, alpha, N);
        table = &*local;
    }
    SpectralCoefficients c(alpha, N);
    std::vector<complex_t> wf(rule.size());
    for (size_t i = 0; i < rule.size(); ++i) wf[i] = rule.weights[i] * f.values[i];
    for (size_t k = 0; k < c.size(); ++k) {
        auto phi = table->basis_on_nodes(c.index_at(k));
        complex_t s(0.0, 0.0);
        for (size_t i = 0; i < rule.size(); ++i) s += wf[i] * phi[i];
        c[k] = s;
    }
    c.mark_dirty();
    return c;
}

/// sum_mu c_mu phi_mu^alpha(x).
inline complex_t synthesize(const SpectralCoefficients& c, const EvalPoint& x) {
    const AlphaParam& alpha = c.alpha();
    if (x.dim() != alpha.dim()) throw dimension_error("synthesize: dimension mismatch");
    std::vector<std::vector<double>> ax(static_cast<size_t>(alpha.dim()));
    for (int i = 0; i < alpha.dim(); ++i)
        ax[static_cast<size_t>(i)] = laguerre_function_1d_seq(c.max_level(), alpha[i], x[i]);
    complex_t s(0.0, 0.0);
    for (size_t k = 0; k < c.size(); ++k) {
        const MultiIndex& mu = c.index_at(k);
        double p = 1.0;
        for (int i = 0; i < alpha.dim(); ++i)
            p *= ax[static_cast<size_t>(i)][static_cast<size_t>(mu[i])];
        s += c[k] * p;
    }
    return s;
}

/// Synthesized values on all rule nodes (through a basis table).
inline std::vector<complex_t> synthesize_on_rule(const SpectralCoefficients& c,
                                                 const BasisTable& table) {
    std::vector<complex_t> out(table.rule().size(), complex_t(0.0, 0.0));
    for (size_t k = 0; k < c.size(); ++k) {
        if (c[k] == complex_t(0.0, 0.0)) continue;
        auto phi = table.basis_on_nodes(c.index_at(k));
        for (size_t i = 0; i < out.size(); ++i) out[i] += c[k] * phi[i];
    }
    return out;
}

/// Per-level synthesized values: row n holds P_n f on the rule nodes.
inline std::vector<std::vector<complex_t>> level_values_on_rule(const SpectralCoefficients& c,
                                                                const BasisTable& table) {
    std::vector<std::vector<complex_t>> rows(static_cast<size_t>(c.max_level()) + 1);
    for (int n = 0; n <= c.max_level(); ++n) {
        std::vector<complex_t> row(table.rule().size(), complex_t(0.0, 0.0));
        for (size_t k = c.level_offset(n); k < c.level_offset(n) + c.level_size(n); ++k) {
            if (c[k] == complex_t(0.0, 0.0)) continue;
            auto phi = table.basis_on_nodes(c.index_at(k));
            for (size_t i = 0; i < row.size(); ++i) row[i] += c[k] * phi[i];
        }
        rows[static_cast<size_t>(n)] = std::move(row);
    }
    return rows;
}

/// Per-level synthesized values at one point: entry n is P_n f(x).
inline std::vector<complex_t> level_values_at(const SpectralCoefficients& c, const EvalPoint& x) {
    const AlphaParam& alpha = c.alpha();
    std::vector<std::vector<double>> ax(static_cast<size_t>(alpha.dim()));
    for (int i = 0; i < alpha.dim(); ++i)
        ax[static_cast<size_t>(i)] = laguerre_function_1d_seq(c.max_level(), alpha[i], x[i]);
    std::vector<complex_t> out(static_cast<size_t>(c.max_level()) + 1, complex_t(0.0, 0.0));
    for (int n = 0; n <= c.max_level(); ++n) {
        complex_t s(0.0, 0.0);
        for (size_t k = c.level_offset(n); k < c.level_offset(n) + c.level_size(n); ++k) {
            const MultiIndex& mu = c.index_at(k);
            double p = 1.0;
            for (int i = 0; i < alpha.dim(); ++i)
                p *= ax[static_cast<size_t>(i)][static_cast<size_t>(mu[i])];
            s += c[k] * p;
        }
        out[static_cast<size_t>(n)] = s;
    }
    return out;
}

struct ProjectResult {
    SpectralCoefficients coeffs;
    bool out_of_range = false;
};

/// Keep exactly the level-n coefficients.
inline ProjectResult project(const SpectralCoefficients& c, int n) {
    SpectralCoefficients out(c.alpha(), c.max_level());
    if (n > c.max_level()) return {std::move(out), true};
    for (size_t k = c.level_offset(n); k < c.level_offset(n) + c.level_size(n); ++k)
        out[k] = c[k];
    out.mark_dirty();
    return {std::move(out), false};
}

/// c_mu <- m(e_{|mu|_1}) c_mu (or m(sqrt(e)) per convention).
inline SpectralCoefficients apply_multiplier(const SpectralCoefficients& c,
                                             const MultiplierSpec& spec) {
    SpectralCoefficients out = c;
    for (int n = 0; n <= c.max_level(); ++n) {
        complex_t f = spec.eval(eigenvalue(n, c.alpha()));
        if (!std::isfinite(f.real()) || !std::isfinite(f.imag()))
            throw domain_error("apply_multiplier: multiplier unbounded on truncated spectrum");
        for (size_t k = c.level_offset(n); k < c.level_offset(n) + c.level_size(n); ++k)
            out[k] = f * c[k];
    }
    out.mark_dirty();
    return out;
}

/// Bochner-Riesz factor per level: (1 - e_n/R^2)_+^lambda (lambda = 0 gives the
/// sharp partial sum; the factor at e_n = R^2 is 0 in both conventions).
inline double riesz_factor(double e, double lambda, double R) {
    double t = 1.0 - e / (R * R);
    if (t <= 0.0) return 0.0;
    return lambda == 0.0 ? 1.0 : std::pow(t, lambda);
}

inline SpectralCoefficients bochner_riesz(const SpectralCoefficients& c, double lambda,
                                          double R) {
    if (!(lambda >= 0.0) || !(R > 0.0))
        throw domain_error("bochner_riesz: lambda >= 0, R > 0 required");
    SpectralCoefficients out = c;
    for (int n = 0; n <= c.max_level(); ++n) {
        double f = riesz_factor(eigenvalue(n, c.alpha()), lambda, R);
        for (size_t k = c.level_offset(n); k < c.level_offset(n) + c.level_size(n); ++k)
            out[k] = f * c[k];
    }
    out.mark_dirty();
    return out;
}

/// Geometric R grid (ratio 1 + delta_r) over [0.9 sqrt(e_0), 1.1 sqrt(e_N)],
/// plus the exact crossings sqrt(e_n) +- one ulp where partial sums jump.
inline std::vector<double> riesz_r_grid(const AlphaParam& alpha, int N, double delta_r = 0.01) {
    std::vector<double> grid;
    double lo = 0.9 * std::sqrt(eigenvalue(0, alpha));
    double hi = 1.1 * std::sqrt(eigenvalue(N, alpha));
    for (double r = lo; r <= hi; r *= 1.0 + delta_r) grid.push_back(r);
    for (int n = 0; n <= N; ++n) {
        double r = std::sqrt(eigenvalue(n, alpha));
        grid.push_back(std::nextafter(r, 0.0));
        grid.push_back(std::nextafter(r, 2.0 * hi));
    }
    std::sort(grid.begin(), grid.end());
    return grid;
}

/// max over the R grid of |S_R^lambda f(x)|; a lower bound for the true sup.
inline double maximal_riesz(const SpectralCoefficients& c, double lambda,
                            const std::vector<double>& r_grid, const EvalPoint& x) {
    if (r_grid.empty()) throw domain_error("maximal_riesz: empty R grid");
    auto lv = level_values_at(c, x);
    double best = 0.0;
    for (double R : r_grid) {
        complex_t s(0.0, 0.0);
        for (int n = 0; n <= c.max_level(); ++n)
            s += riesz_factor(eigenvalue(n, c.alpha()), lambda, R) * lv[static_cast<size_t>(n)];
        best = std::max(best, std::abs(s));
    }
    return best;
}

/// Deterministic band-limited test functions: complex Gaussian coefficients
/// from a fixed-seed generator (documented in the experiment configs).
inline SpectralCoefficients random_coefficients(const AlphaParam& alpha, int N,
                                                std::uint64_t seed) {
    SpectralCoefficients c(alpha, N);
    // splitmix64 stream -> Box-Muller; self-contained so seeds mean the same
    // thing on every platform.
    std::uint64_t s = seed;
    auto next_u64 = [&]() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    auto next_unit = [&]() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    };
    for (size_t k = 0; k < c.size(); ++k) {
        double u1 = next_unit(), u2 = next_unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        c[k] = complex_t(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
    }
    c.mark_dirty();
    return c;
}

} // namespace laglab
