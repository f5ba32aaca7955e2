#pragma once

#include <cmath>
#include <cstdint>

namespace featmass {

// Reproducibility contract
// ------------------------
// All randomness in this project flows from a single 64-bit master seed.
// Per-replicate seeds are elements of the SplitMix64 output sequence started
// at the master seed, and every engine is an xoshiro256++ whose 256-bit state
// is expanded from its 64-bit seed with SplitMix64. Both algorithms are
// published, public-domain constructions (Steele et al. for SplitMix64,
// Blackman & Vigna for xoshiro256++). They are part of the on-disk format:
// changing them would silently invalidate every recorded seed, so they are
// fixed forever.

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Element `index` of the SplitMix64 stream seeded with `master`.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64_mix(master + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) {
            sm += 0x9e3779b97f4a7c15ULL;
            word = splitmix64_mix(sm);
        }
    }

    result_type operator()() {
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

    // Uniform on [0, 1), 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // Standard exponential via inversion.
    double exponential() { return -std::log1p(-uniform()); }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~static_cast<result_type>(0); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
};

// Exact single-uniform inversion sampler for Binomial(n, p). The map u -> k
// partitions [0,1) into intervals of exactly the binomial probabilities, so
// the draw is exact (up to floating-point rounding of the pmf recurrences)
// in every regime, including n*p far below 1 where the first comparison
// against (1-p)^n short-circuits to zero. Never truncates silently.
std::int64_t binomial_inv(double u, std::int64_t n, double p);

inline std::int64_t binomial(Xoshiro256pp& rng, std::int64_t n, double p) {
    return binomial_inv(rng.uniform(), n, p);
}

}  // namespace featmass
