#pragma once

#include <cstdint>
#include <random>

namespace wml {

// Stateless 64-bit avalanche permutation (the SplitMix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for one Monte Carlo unit, a pure function of (base, tag, index).
// Chained mixing makes distinct inputs collide only by a 64-bit coincidence
// of the permutation, and each stage is itself a bijection of its input.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag,
                                    std::uint64_t index) noexcept {
    return mix64(mix64(mix64(base) ^ tag) ^ index);
}

// Stream tags used across the library.
namespace seed_tag {
inline constexpr std::uint64_t goe = 0x474f45;          // "GOE"
inline constexpr std::uint64_t wishart = 0x574953;      // "WIS"
inline constexpr std::uint64_t mask = 0x4d41534b;       // "MASK"
inline constexpr std::uint64_t reference = 0x524546;    // "REF"
inline constexpr std::uint64_t block = 0x424c4b;        // "BLK"
inline constexpr std::uint64_t graph = 0x475248;        // "GRH"
inline constexpr std::uint64_t trial = 0x54524c;        // "TRL"
} // namespace seed_tag

// Reproducible variate source.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The transforms below are implemented here rather than taken from
// <random> distributions, whose algorithms are implementation-defined:
//   uniform01  top 53 bits of one engine output, in [0, 1)
//   normal     Marsaglia polar method; the second variate of each accepted
//              pair is cached and returned by the next call
//   gamma      Marsaglia-Tsang squeeze for shape >= 1, boosted by
//              U^(1/shape) for shape < 1
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double normal();
    double gamma(double shape);
    double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace wml
