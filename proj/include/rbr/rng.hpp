#pragma once

#include <cstdint>
#include <random>

namespace rbr {

// All randomness in the library flows through Rng instances whose seeds are
// derived with mix_seed from a master seed, a phase tag and a per-item index.
// Work item i always sees the same stream no matter which worker runs it, so
// every result is reproducible and independent of the thread count.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (splitmix64(b) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

// Phase tags keep the estimation, final-sampling and evaluation tuple streams
// in disjoint seed namespaces even under the same master seed.
inline constexpr std::uint64_t kStreamEstimation = 0xe5717a6u;
inline constexpr std::uint64_t kStreamSelection  = 0x5e1ec7u;
inline constexpr std::uint64_t kStreamEvaluation = 0xeb0a17a6u;
inline constexpr std::uint64_t kStreamGreedyMc   = 0x6eedu;
inline constexpr std::uint64_t kStreamGenerator  = 0x6e4au;
inline constexpr std::uint64_t kStreamBaseline   = 0xba5eu;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    std::uint64_t u64() { return eng_(); }

    // Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), n >= 1. Rejection keeps it exact.
    std::uint32_t below(std::uint32_t n) {
        std::uint64_t threshold = (~std::uint64_t{0} / n) * n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= threshold);
        return static_cast<std::uint32_t>(x % n);
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

}  // namespace rbr
