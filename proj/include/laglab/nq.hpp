#pragma once

#include <cmath>
#include <functional>

#include "laglab/types.hpp"

namespace laglab {

/// Cellwise-sup discrete q-mean over [0,1] split into N^2 cells:
/// ((1/N^2) sum_i sup_{cell_i} |F|^q)^{1/q}. The sup over each cell is
/// estimated from 17 equispaced interior samples plus both endpoints.
inline double nq_norm(const std::function<double(double)>& F, int N, double q,
                      int interior_samples = 17) {
    if (N < 1) throw domain_error("nq_norm: N >= 1 required");
    if (!(q >= 2.0)) throw domain_error("nq_norm: q >= 2 required");
    const long cells = static_cast<long>(N) * N;
    const double h = 1.0 / static_cast<double>(cells);
    double acc = 0.0;
    for (long i = 0; i < cells; ++i) {
        double lo = i * h, hi = lo + h;
        double sup = std::max(std::abs(F(lo)), std::abs(F(hi)));
        for (int s = 1; s <= interior_samples; ++s) {
            double t = lo + h * s / (interior_samples + 1.0);
            sup = std::max(sup, std::abs(F(t)));
        }
        acc += std::pow(sup, q);
    }
    return std::pow(acc / static_cast<double>(cells), 1.0 / q);
}

} // namespace laglab
