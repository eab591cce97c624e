#pragma once

#include <cstdint>
#include <vector>

#include "laglab/types.hpp"

namespace laglab {

/// splitmix64: the one deterministic unit-uniform stream used everywhere a
/// seed appears, so identical seeds mean identical experiments on any platform.
class SplitMix {
  public:
    explicit SplitMix(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next_u64() {
        s_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    /// uniform in (0,1)
    double next_unit() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }
    double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  private:
    std::uint64_t s_;
};

/// Sobol sequence, dimensions 1..8 (Joe-Kuo direction numbers), gray-code scheme.
class Sobol {
  public:
    explicit Sobol(int dim) : dim_(dim), x_(static_cast<size_t>(dim), 0), count_(0) {
        if (dim < 1 || dim > 8) throw domain_error("Sobol: 1 <= dim <= 8");
        // degree s, polynomial coefficient bits a, initial direction integers m
        static const int s_tab[8] = {0, 1, 2, 3, 3, 4, 4, 5};
        static const unsigned a_tab[8] = {0, 0, 1, 1, 2, 1, 4, 2};
        static const unsigned m_tab[8][5] = {{0, 0, 0, 0, 0},  {1, 0, 0, 0, 0},
                                             {1, 3, 0, 0, 0},  {1, 3, 1, 0, 0},
                                             {1, 1, 1, 0, 0},  {1, 1, 3, 3, 0},
                                             {1, 3, 5, 13, 0}, {1, 1, 5, 5, 17}};
        v_.assign(static_cast<size_t>(dim), std::vector<std::uint32_t>(kBits, 0));
        for (int j = 0; j < dim; ++j) {
            auto& v = v_[static_cast<size_t>(j)];
            if (j == 0) {
                for (int i = 0; i < kBits; ++i) v[static_cast<size_t>(i)] = 1u << (31 - i);
                continue;
            }
            int s = s_tab[j];
            unsigned a = a_tab[j];
            std::vector<std::uint32_t> m(static_cast<size_t>(kBits));
            for (int i = 0; i < s; ++i) m[static_cast<size_t>(i)] = m_tab[j][i];
            for (int i = s; i < kBits; ++i) {
                std::uint32_t mi = m[static_cast<size_t>(i - s)] ^
                                   (m[static_cast<size_t>(i - s)] << s);
                for (int k = 1; k < s; ++k)
                    if ((a >> (s - 1 - k)) & 1u) mi ^= m[static_cast<size_t>(i - k)] << k;
                m[static_cast<size_t>(i)] = mi;
            }
            for (int i = 0; i < kBits; ++i)
                v[static_cast<size_t>(i)] = m[static_cast<size_t>(i)] << (31 - i);
        }
    }

    /// next point in (0,1)^dim
    std::vector<double> next() {
        std::uint64_t c = count_++;
        int rb = 0;
        while (c & 1u) {
            c >>= 1;
            ++rb;
        }
        std::vector<double> p(static_cast<size_t>(dim_));
        for (int j = 0; j < dim_; ++j) {
            x_[static_cast<size_t>(j)] ^= v_[static_cast<size_t>(j)][static_cast<size_t>(rb)];
            p[static_cast<size_t>(j)] =
                (static_cast<double>(x_[static_cast<size_t>(j)]) + 0.5) * 0x1.0p-32;
        }
        return p;
    }

  private:
    static constexpr int kBits = 32;
    int dim_;
    std::vector<std::vector<std::uint32_t>> v_;
    std::vector<std::uint32_t> x_;
    std::uint64_t count_;
};

} // namespace laglab
