#pragma once

#include <cstdint>
#include <random>

namespace netsir {

/// SplitMix64 finalizer (Steele, Lea & Flood). Used to decorrelate seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of the `index`-th child stream of `master`. Pure function of its
/// arguments, so replicate j sees the same stream no matter which thread
/// runs it.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Random stream used by every stochastic component.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The conversions to doubles and bounded integers are done here
/// rather than through <random> distributions, whose algorithms are
/// implementation-defined, so trajectories are identical across standard
/// libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// True with probability `prob` (callers guarantee prob in [0, 1]).
    bool bernoulli(double prob) noexcept { return uniform() < prob; }

    /// Uniform integer in [0, bound), bound > 0. Rejection sampling, unbiased.
    std::uint64_t below(std::uint64_t bound) noexcept;

    std::uint64_t next() noexcept { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace netsir
