#ifndef SINRSCHED_RNG_HPP
#define SINRSCHED_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace sinrsched {

/// Draws below are built directly on the mt19937_64 bit stream instead of
/// the standard distribution adaptors, whose output is implementation
/// defined; this keeps seeded runs byte-identical across toolchains.

/// Uniform double in [0, 1) with 53-bit resolution.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_range(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

/// Uniform integer in [lo, hi] by scaling, adequate for simulation spans.
inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    const int span = hi - lo + 1;
    int v = lo + static_cast<int>(uniform_unit(rng) * span);
    return v > hi ? hi : v;
}

/// Poisson draw by inverse-CDF products (exact for the modest means used
/// here), truncated at `cap`.
inline int poisson_draw(std::mt19937_64& rng, double lambda, int cap) {
    const double limit = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= uniform_unit(rng);
    } while (p > limit && k <= cap);
    const int v = k - 1;
    return v > cap ? cap : v;
}

}  // namespace sinrsched

#endif
