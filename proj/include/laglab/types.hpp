#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace laglab {

using complex_t = std::complex<double>;

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct dimension_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Type multi-index alpha in [-1/2, inf)^d. Values in (-1, -1/2) are admitted
/// only with extended=true (the eigenfunctions then leave some L^p).
class AlphaParam {
  public:
    explicit AlphaParam(std::vector<double> entries, bool extended = false)
        : entries_(std::move(entries)) {
        if (entries_.empty()) throw domain_error("AlphaParam: empty entries");
        for (double a : entries_) {
            double lo = extended ? -1.0 : -0.5;
            if (!(a >= lo) || a <= -1.0)
                throw domain_error("AlphaParam: entry " + std::to_string(a) +
                                   " outside admissible range");
        }
        alpha_l1_ = std::accumulate(entries_.begin(), entries_.end(), 0.0);
    }

    static AlphaParam constant(double a, int dim) {
        return AlphaParam(std::vector<double>(static_cast<size_t>(dim), a));
    }

    int dim() const { return static_cast<int>(entries_.size()); }
    double l1() const { return alpha_l1_; }
    double operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
    const std::vector<double>& entries() const { return entries_; }

    bool operator==(const AlphaParam& o) const { return entries_ == o.entries_; }

  private:
    std::vector<double> entries_;
    double alpha_l1_ = 0.0;
};

/// Abscissa in (0, inf)^d with cached Euclidean and l1 norms.
struct EvalPoint {
    std::vector<double> coords;

    explicit EvalPoint(std::vector<double> c) : coords(std::move(c)) {
        for (double x : coords)
            if (!(x > 0.0)) throw domain_error("EvalPoint: coordinates must be positive");
    }
    static EvalPoint scalar(double x) { return EvalPoint(std::vector<double>{x}); }

    int dim() const { return static_cast<int>(coords.size()); }
    double norm2() const {
        double s = 0.0;
        for (double x : coords) s += x * x;
        return s;
    }
    double norm() const { return std::sqrt(norm2()); }
    double l1() const { return std::accumulate(coords.begin(), coords.end(), 0.0); }
    double operator[](int i) const { return coords[static_cast<size_t>(i)]; }
};

/// mu in N^d enumerated by level |mu|_1.
struct MultiIndex {
    std::vector<int> entries;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> e) : entries(std::move(e)) {
        for (int m : entries)
            if (m < 0) throw domain_error("MultiIndex: negative entry");
    }
    static MultiIndex scalar(int n) { return MultiIndex(std::vector<int>{n}); }

    int dim() const { return static_cast<int>(entries.size()); }
    int level() const { return std::accumulate(entries.begin(), entries.end(), 0); }
    int operator[](int i) const { return entries[static_cast<size_t>(i)]; }
    bool operator==(const MultiIndex& o) const { return entries == o.entries; }
    bool operator<(const MultiIndex& o) const { return entries < o.entries; }
};

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Number of multi-indices of dimension d at level n: C(n+d-1, d-1).
inline std::int64_t level_count(int n, int d) { return binomial(n + d - 1, d - 1); }

} // namespace laglab
