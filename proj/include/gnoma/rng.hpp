// Seeded, substream-capable RNG for reproducible Monte Carlo runs.
//
// All randomness in the library flows through Rng so that results are
// bit-identical across platforms and worker counts. The generator is
// xoshiro256++ seeded through the splitmix64 finalizer; substreams are
// derived by folding integer keys into the master seed, so a work item
// (trial index, frame index, grid point) always sees the same stream no
// matter which thread executes it.
//
// Distributions are implemented here rather than with <random> because
// the standard leaves normal_distribution's algorithm unspecified;
// Box-Muller on top of a fixed uniform mapping reproduces everywhere.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace gnoma {

// splitmix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Folds stream keys into a master seed. Order matters: (a,b) != (b,a).
constexpr std::uint64_t substream_seed(std::uint64_t master) { return mix64(master); }

template <typename... Keys>
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t key, Keys... rest) {
    return substream_seed(mix64(master ^ mix64(key + 0x6a09e667f3bcc909ULL)), rest...);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) {
            s = mix64(s);
            w = s;
        }
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    template <typename... Keys>
    static Rng substream(std::uint64_t master, Keys... keys) {
        return Rng(substream_seed(master, static_cast<std::uint64_t>(keys)...));
    }

    // xoshiro256++ (Blackman, Vigna 2019)
    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0,1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0,1]; safe as a log() argument.
    double next_double_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (-n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t x = next_u64();
            if (x >= threshold) return x % n;
        }
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Box-Muller pair of independent N(0,1) samples.
    void next_normal_pair(double& z0, double& z1) {
        const double u1 = next_double_pos();
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        z0 = radius * std::cos(angle);
        z1 = radius * std::sin(angle);
    }

    // Circularly symmetric complex normal, E|z|^2 = 1.
    std::complex<double> next_cnormal() {
        double re, im;
        next_normal_pair(re, im);
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

    // Fills a buffer with i.i.d. N(0, sigma^2); draws in pairs, the trailing
    // draw of an odd-length fill is discarded so layouts stay reproducible.
    void fill_normal(double* dst, std::size_t n, double sigma) {
        std::size_t i = 0;
        for (; i + 1 < n; i += 2) {
            next_normal_pair(dst[i], dst[i + 1]);
            dst[i] *= sigma;
            dst[i + 1] *= sigma;
        }
        if (i < n) {
            double z0, z1;
            next_normal_pair(z0, z1);
            dst[i] = z0 * sigma;
        }
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_;
};

}  // namespace gnoma
