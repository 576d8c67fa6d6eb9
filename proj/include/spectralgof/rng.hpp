#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace spectralgof {

/// SplitMix64 (Steele, Lea & Flood): a 64-bit counter-based generator.
///
/// The state is a Weyl counter; each output is a bijective mix of the
/// counter, so streams are fully determined by the seed and results are
/// identical on every platform. All distributions used by the generators
/// are implemented here rather than taken from <random>, whose
/// distributions are implementation-defined.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform integer in [0, bound). bound must be positive.
    /// Lemire's multiply-shift with rejection, unbiased.
    std::uint64_t uniform_index(std::uint64_t bound) noexcept {
        __uint128_t m = static_cast<__uint128_t>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<__uint128_t>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) noexcept { return uniform01() < p; }

    /// Poisson variate by multiplication of uniforms; large means are split
    /// into chunks so the running product never underflows.
    std::uint64_t poisson(double mean) noexcept {
        std::uint64_t total = 0;
        while (mean > 0.0) {
            const double chunk = std::min(mean, 200.0);
            mean -= chunk;
            const double limit = std::exp(-chunk);
            double prod = uniform01();
            while (prod >= limit) {
                ++total;
                prod *= uniform01();
            }
        }
        return total;
    }

    template <class T>
    void shuffle(std::span<T> xs) noexcept {
        for (std::size_t i = xs.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_index(i));
            std::swap(xs[i - 1], xs[j]);
        }
    }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    std::uint64_t state_;
};

/// Seed of sub-stream `stream` under `seed`: mix(seed XOR mix(stream + gamma)).
/// Ensemble member k and sweep cell c draw from derive_seed(base, k) /
/// derive_seed(base, c), so results never depend on evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return Rng::mix(seed ^ Rng::mix(stream + 0x9e3779b97f4a7c15ULL));
}

} // namespace spectralgof
