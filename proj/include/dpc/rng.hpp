#pragma once

#include <cmath>

#include "dpc/common.hpp"

namespace dpc {

// Counter-based deterministic RNG.  Every (seed, stream, index) triple maps
// to an independent substream, so sample i produces identical draws no
// matter which thread or shard evaluates it.  Core mixer is splitmix64.
inline u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class CounterRng {
  public:
    CounterRng(u64 seed, u64 stream, u64 index)
        : key_(splitmix64(splitmix64(seed ^ 0x5851f42d4c957f2dULL) ^ stream) ^
               splitmix64(index * 0xda942042e4dd58b5ULL + 1)),
          ctr_(0) {}

    u64 next_u64() { return splitmix64(key_ + (++ctr_) * 0x9e3779b97f4a7c15ULL); }

    // Uniform in [0, 1).
    double uniform01() { return (double)(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [-a, a].
    double uniform_sym(double a) { return a * (2.0 * uniform01() - 1.0); }

    // Symmetric heavy-tailed proposal with density (1/4)(1+|z|)^{-3/2}.
    // Heavier than Cauchy; keeps importance weights square-integrable for
    // integrands that decay like |z|^{-3/2} or faster.
    double heavy_tail() {
        double v = 2.0 * uniform01() - 1.0;
        double s = v < 0 ? -1.0 : 1.0;
        double a = 1.0 - std::fabs(v);
        if (a < 1e-300) a = 1e-300;
        return s * (1.0 / (a * a) - 1.0);
    }
    static double heavy_tail_pdf(double z) {
        double t = 1.0 + std::fabs(z);
        return 0.25 / (t * std::sqrt(t));
    }

    // Symmetric sqrt-shaped proposal on [-a, a] with density 1/(4*sqrt(a|x|)).
    // Concentrates samples near 0 where 1/|x|-type fibers blow up.
    double sqrt_shaped(double a) {
        double v = 2.0 * uniform01() - 1.0;
        double s = v < 0 ? -1.0 : 1.0;
        return s * a * v * v;
    }
    static double sqrt_shaped_pdf(double x, double a) {
        double ax = std::fabs(x);
        if (ax > a) return 0.0;
        if (ax < 1e-300) ax = 1e-300;
        return 1.0 / (4.0 * std::sqrt(a * ax));
    }

  private:
    u64 key_;
    u64 ctr_;
};

}  // namespace dpc
