#include "ltppm/random.hpp"

#include <cmath>
#include <numbers>

namespace ltppm {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RandomStream::uniform01()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::index(std::uint64_t n)
{
    if (n == 0) {
        throw ContractViolation("RandomStream::index: empty range");
    }
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
        r = engine_();
    } while (r >= limit);
    return r % n;
}

double RandomStream::normal()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // 1 - u lies in (0, 1], so the log is finite.
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Vector RandomStream::normal_vector(Index n)
{
    Vector z(n);
    for (Index i = 0; i < n; ++i) {
        z(i) = normal();
    }
    return z;
}

Vector RandomStream::unit_vector(Index n)
{
    if (n < 1) {
        throw ContractViolation("RandomStream::unit_vector: dimension must be positive");
    }
    for (;;) {
        Vector z = normal_vector(n);
        const double norm = z.norm();
        if (norm > 0.0 && std::isfinite(norm)) {
            return z / norm;
        }
    }
}

RandomStream RandomStream::split(std::uint64_t k) const
{
    return RandomStream(splitmix64(seed_ + (k + 1) * 0x9E3779B97F4A7C15ULL));
}

} // namespace ltppm
