#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "laglab/laguerre.hpp"
#include "laglab/types.hpp"

namespace laglab {

enum class RuleKind { GaussGenLaguerreSquared, TanhSinhTruncated, UniformBox };

inline const char* rule_kind_name(RuleKind k) {
    switch (k) {
        case RuleKind::GaussGenLaguerreSquared: return "GAUSS_GENLAGUERRE_SQUARED";
        case RuleKind::TanhSinhTruncated: return "TANH_SINH_TRUNCATED";
        case RuleKind::UniformBox: return "UNIFORM_BOX";
    }
    return "?";
}

namespace detail {

/// Eigenvalues of a symmetric tridiagonal matrix (QL with implicit shifts,
/// values only). diag/offdiag are consumed; offdiag[0..n-2].
inline void tridiag_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw numerical_error("tridiag_eigenvalues: no convergence");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
}

/// Nodes and weights of the m-point generalized Gauss-Laguerre rule for the
/// measure u^a e^{-u} du on (0,inf). Golub-Welsch eigenvalues seeded into a
/// Newton polish on NL_m^a, weights from the Christoffel identity expressed in
/// normalized Laguerre values (all quantities stay in range at any order).
inline void gauss_gen_laguerre(int m, double a, std::vector<double>& nodes,
                               std::vector<double>& plain_dx_weights) {
    std::vector<double> d(static_cast<size_t>(m)), e;
    e.reserve(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k) d[static_cast<size_t>(k)] = 2.0 * k + a + 1.0;
    for (int k = 1; k < m; ++k) e.push_back(std::sqrt(k * (k + a)));
    tridiag_eigenvalues(d, e);
    nodes = d;
    plain_dx_weights.assign(static_cast<size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
        double u = nodes[static_cast<size_t>(i)];
        for (int it = 0; it < 3; ++it) {
            auto v = normalized_laguerre_seq(m, a, u);
            double f = v[static_cast<size_t>(m)];
            double fp = ((m + 0.5 * a - 0.5 * u) * f -
                         std::sqrt(static_cast<double>(m) * (m + a)) *
                             v[static_cast<size_t>(m) - 1]) /
                        u;
            double du = f / fp;
            if (std::abs(du) > 0.5 * u) du = std::copysign(0.5 * u, du);
            u -= du;
            if (std::abs(du) < 1e-15 * u) break;
        }
        nodes[static_cast<size_t>(i)] = u;
        auto v = normalized_laguerre_seq(m - 1, a, u);
        double s = 0.0;
        for (int k = 0; k < m; ++k) s += v[static_cast<size_t>(k)] * v[static_cast<size_t>(k)];
        // weight for plain int f(x) dx after x = sqrt(u): 1 / (2 sqrt(u) sum NL_k^2)
        plain_dx_weights[static_cast<size_t>(i)] = 1.0 / (2.0 * std::sqrt(u) * s);
    }
}

} // namespace detail

/// Quadrature rule on (0,inf)^d: tensorized nodes/weights for plain dx
/// integrals of functions with e^{-|x|^2}-type decay.
class QuadratureRule {
  public:
    RuleKind kind = RuleKind::GaussGenLaguerreSquared;
    int order = 0; // points per axis
    int dim = 1;
    double domain_cap = std::numeric_limits<double>::infinity();
    std::vector<double> laguerre_params; // per-axis a (Gauss rules)

    std::vector<EvalPoint> nodes;
    std::vector<double> weights;

    // per-axis 1-d data; kept so callers can build separable value tables
    std::vector<std::vector<double>> axis_nodes;
    std::vector<std::vector<double>> axis_weights;

    size_t size() const { return nodes.size(); }

    /// Index of node (i_1,...,i_d) in the tensor ordering (last axis fastest).
    size_t tensor_index(const std::vector<int>& idx) const {
        size_t r = 0;
        for (int ax = 0; ax < dim; ++ax)
            r = r * axis_nodes[static_cast<size_t>(ax)].size() + static_cast<size_t>(idx[static_cast<size_t>(ax)]);
        return r;
    }

  private:
    friend QuadratureRule build_rule(RuleKind, int, int, double);
    friend QuadratureRule build_rule(const AlphaParam&, int, double);

    void tensorize() {
        size_t total = 1;
        for (auto& an : axis_nodes) total *= an.size();
        nodes.clear();
        weights.clear();
        nodes.reserve(total);
        weights.reserve(total);
        std::vector<int> idx(static_cast<size_t>(dim), 0);
        for (size_t c = 0; c < total; ++c) {
            std::vector<double> x(static_cast<size_t>(dim));
            double w = 1.0;
            for (int ax = 0; ax < dim; ++ax) {
                x[static_cast<size_t>(ax)] = axis_nodes[static_cast<size_t>(ax)][static_cast<size_t>(idx[static_cast<size_t>(ax)])];
                w *= axis_weights[static_cast<size_t>(ax)][static_cast<size_t>(idx[static_cast<size_t>(ax)])];
            }
            nodes.emplace_back(std::move(x));
            weights.push_back(w);
            for (int ax = dim - 1; ax >= 0; --ax) {
                if (++idx[static_cast<size_t>(ax)] <
                    static_cast<int>(axis_nodes[static_cast<size_t>(ax)].size()))
                    break;
                idx[static_cast<size_t>(ax)] = 0;
            }
        }
    }
};

/// Rule with identical axes; Gauss axes use Laguerre parameter a = -1/2, which
/// makes x^{2k} e^{-x^2} integrals exact. `scale` stretches nodes (and weights).
inline QuadratureRule build_rule(RuleKind kind, int order, int dim, double scale = 1.0) {
    if (order < 4) throw domain_error("build_rule: order >= 4 required");
    if (dim < 1) throw domain_error("build_rule: dim >= 1 required");
    QuadratureRule r;
    r.kind = kind;
    r.order = order;
    r.dim = dim;
    std::vector<double> xs, ws;
    switch (kind) {
        case RuleKind::GaussGenLaguerreSquared: {
            std::vector<double> u, w;
            detail::gauss_gen_laguerre(order, -0.5, u, w);
            for (int i = 0; i < order; ++i) {
                xs.push_back(scale * std::sqrt(u[static_cast<size_t>(i)]));
                ws.push_back(scale * w[static_cast<size_t>(i)]);
            }
            r.laguerre_params.assign(static_cast<size_t>(dim), -0.5);
            break;
        }
        case RuleKind::TanhSinhTruncated: {
            // double-exponential map of (-1,1) onto (0, cap)
            double cap = scale;
            r.domain_cap = cap;
            double h = 5.6 / order;
            for (int k = -order / 2; k <= order / 2; ++k) {
                double t = k * h;
                double s = std::sinh(t);
                double g = std::tanh(0.5 * M_PI * s);
                double x = 0.5 * cap * (g + 1.0);
                double dg = 0.5 * M_PI * std::cosh(t) / std::pow(std::cosh(0.5 * M_PI * s), 2);
                if (x <= 0.0 || x >= cap) continue;
                xs.push_back(x);
                ws.push_back(0.5 * cap * dg * h);
            }
            break;
        }
        case RuleKind::UniformBox: {
            double cap = scale;
            r.domain_cap = cap;
            double h = cap / order;
            for (int i = 0; i < order; ++i) {
                xs.push_back((i + 0.5) * h);
                ws.push_back(h);
            }
            break;
        }
    }
    r.axis_nodes.assign(static_cast<size_t>(dim), xs);
    r.axis_weights.assign(static_cast<size_t>(dim), ws);
    r.tensorize();
    return r;
}

/// Eigenfunction-adapted Gauss rule: axis i uses Laguerre parameter alpha_i, so
/// products phi_mu^alpha phi_nu^alpha are integrated exactly up to the Gauss degree.
inline QuadratureRule build_rule(const AlphaParam& alpha, int order, double scale = 1.0) {
    if (order < 4) throw domain_error("build_rule: order >= 4 required");
    QuadratureRule r;
    r.kind = RuleKind::GaussGenLaguerreSquared;
    r.order = order;
    r.dim = alpha.dim();
    for (int ax = 0; ax < alpha.dim(); ++ax) {
        std::vector<double> u, w, xs, ws;
        detail::gauss_gen_laguerre(order, alpha[ax], u, w);
        for (int i = 0; i < order; ++i) {
            xs.push_back(scale * std::sqrt(u[static_cast<size_t>(i)]));
            ws.push_back(scale * w[static_cast<size_t>(i)]);
        }
        r.laguerre_params.push_back(alpha[ax]);
        r.axis_nodes.push_back(std::move(xs));
        r.axis_weights.push_back(std::move(ws));
    }
    r.tensorize();
    return r;
}

/// Sampled function on a rule's nodes.
struct GridFunction {
    const QuadratureRule* rule = nullptr;
    std::vector<complex_t> values;

    GridFunction() = default;
    explicit GridFunction(const QuadratureRule& r)
        : rule(&r), values(r.size(), complex_t(0.0, 0.0)) {}

    static GridFunction sample(const QuadratureRule& r,
                               const std::function<complex_t(const EvalPoint&)>& f) {
        GridFunction g(r);
        for (size_t i = 0; i < r.size(); ++i) g.values[i] = f(r.nodes[i]);
        return g;
    }
    static GridFunction sample_real(const QuadratureRule& r,
                                    const std::function<double(const EvalPoint&)>& f) {
        GridFunction g(r);
        for (size_t i = 0; i < r.size(); ++i) g.values[i] = complex_t(f(r.nodes[i]), 0.0);
        return g;
    }
};

/// sum_i w_i f_i conj(g_i); linear in f, conjugate-linear in g.
inline complex_t inner_product(const GridFunction& f, const GridFunction& g) {
    if (f.rule != g.rule) throw dimension_error("inner_product: rule mismatch");
    complex_t s(0.0, 0.0);
    for (size_t i = 0; i < f.values.size(); ++i)
        s += f.rule->weights[i] * f.values[i] * std::conj(g.values[i]);
    return s;
}

inline double norm_l2(const GridFunction& f) {
    double s = 0.0;
    for (size_t i = 0; i < f.values.size(); ++i)
        s += f.rule->weights[i] * std::norm(f.values[i]);
    return std::sqrt(s);
}

/// (sum_i w_i |f_i|^2 (1+|x_i|)^{-beta})^{1/2}.
inline double weighted_norm(const GridFunction& f, double beta) {
    if (!(beta >= 0.0)) throw domain_error("weighted_norm: beta >= 0 required");
    double s = 0.0;
    for (size_t i = 0; i < f.values.size(); ++i)
        s += f.rule->weights[i] * std::norm(f.values[i]) *
             std::pow(1.0 + f.rule->nodes[i].norm(), -beta);
    return std::sqrt(s);
}

/// Versioned text serialization, one node/weight per line.
inline void save_rule(const QuadratureRule& r, std::ostream& os) {
    os << "laglab-rule v1\n";
    os << rule_kind_name(r.kind) << " " << r.order << " " << r.dim << " "
       << format_double(r.domain_cap) << "\n";
    for (size_t i = 0; i < r.size(); ++i) {
        for (int ax = 0; ax < r.dim; ++ax) os << format_double(r.nodes[i][ax]) << " ";
        os << format_double(r.weights[i]) << "\n";
    }
}

inline void save_rule(const QuadratureRule& r, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw numerical_error("save_rule: cannot open " + path);
    save_rule(r, os);
}

struct SerializedRule {
    std::string kind;
    int order = 0, dim = 0;
    double domain_cap = 0.0;
    std::vector<std::vector<double>> node_coords;
    std::vector<double> weights;
};

inline SerializedRule load_rule(std::istream& is) {
    std::string header;
    std::getline(is, header);
    if (header != "laglab-rule v1") throw domain_error("load_rule: bad header");
    SerializedRule s;
    is >> s.kind >> s.order >> s.dim >> s.domain_cap;
    std::vector<double> row(static_cast<size_t>(s.dim) + 1);
    while (true) {
        for (auto& v : row)
            if (!(is >> v)) return s;
        s.node_coords.emplace_back(row.begin(), row.end() - 1);
        s.weights.push_back(row.back());
    }
}

} // namespace laglab
