#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace ocrect {

// Deterministic random source. Wraps std::mt19937_64 (the engine is bit-exact
// per the standard) with fixed sampling algorithms, because the standard
// library's distributions are implementation-defined and would break the
// byte-identical-output contract across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in (0, 1], 53-bit resolution.
    double uniform01() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    // Uniform integer in [lo, hi] inclusive; rejection sampling, no modulo bias.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t reject_below = (0 - span) % span;
        std::uint64_t x = engine_();
        while (x < reject_below) x = engine_();
        return lo + static_cast<std::int64_t>(x % span);
    }

    bool bernoulli(double p) { return uniform01() <= p; }

    // Standard normal via Box-Muller (one value per call).
    double normal() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static constexpr double kTwoPi = 6.28318530717958647692;
    std::mt19937_64 engine_;
};

}  // namespace ocrect
