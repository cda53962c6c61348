#pragma once

#include "ltppm/core.hpp"

#include <cstdint>
#include <random>

namespace ltppm {

/// Seeded pseudo-random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. All derived variates are produced here rather than through the
/// <random> distributions (whose algorithms are implementation-defined), so
/// a seed yields the same draws with any conforming standard library:
///
///   uniform01  (next_u64() >> 11) * 2^-53, in [0, 1)
///   normal     Box-Muller on two uniforms; the sine branch is cached and
///              returned by the following call
///   split(k)   child seeded with splitmix64(seed + (k + 1) * 0x9E3779B97F4A7C15)
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }
    double uniform01();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    /// Uniform integer in [0, n). Uses rejection to avoid modulo bias.
    std::uint64_t index(std::uint64_t n);
    double normal();
    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Vector of iid standard normals.
    Vector normal_vector(Index n);
    /// Uniform point on the unit sphere in R^n (n >= 1).
    Vector unit_vector(Index n);

    /// Independent child stream for worker k. Does not advance this stream.
    RandomStream split(std::uint64_t k) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

} // namespace ltppm
