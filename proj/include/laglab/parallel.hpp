#pragma once

#include <thread>
#include <vector>

namespace laglab {

/// Index-parallel loop over [0, n) with preallocated output slots: each index
/// writes only its own data, so the result is identical for any thread count.
template <typename F>
void parallel_for(long n, int jobs, const F& body) {
    if (jobs <= 1 || n < 2) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> ts;
    int nt = jobs;
    for (int t = 0; t < nt; ++t) {
        ts.emplace_back([&, t]() {
            for (long i = t; i < n; i += nt) body(i);
        });
    }
    for (auto& th : ts) th.join();
}

} // namespace laglab
