#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace approxinv {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// FNV-1a, stable across platforms and runs.
constexpr std::uint64_t stable_hash(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Splittable seed stream: each split() yields a fresh, reproducible child.
class SeedStream {
public:
    explicit SeedStream(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    SeedStream split() noexcept { return SeedStream(next()); }
    Rng engine() noexcept { return Rng(next()); }

private:
    std::uint64_t state_;
};

/// Uniform point in the closed complex disk of the given radius.
inline std::complex<double> uniform_in_disk(Rng& rng, double radius) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = radius * std::sqrt(u(rng));
    const double phi = 2.0 * 3.14159265358979323846 * u(rng);
    return std::polar(r, phi);
}

inline std::complex<double> complex_normal(Rng& rng, double sigma = 1.0) {
    std::normal_distribution<double> n(0.0, sigma);
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

}  // namespace approxinv
