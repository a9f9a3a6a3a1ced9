#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace vtg {

// splitmix64 step; used to expand seeds into generator state and to derive
// independent child seeds from a base seed.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic child seed for (base, a, b), e.g. per (mesh index, view index).
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0) {
    uint64_t s = base;
    uint64_t h = splitmix64(s);
    s ^= a * 0x9e3779b97f4a7c15ull + 0x165667b19e3779f9ull;
    h ^= splitmix64(s);
    s ^= b * 0xc2b2ae3d27d4eb4full + 0x27d4eb2f165667c5ull;
    h ^= splitmix64(s);
    return h;
}

// xoshiro256** 1.0 (Blackman & Vigna). Chosen for portability: the stream is
// a pure function of the 64-bit seed, identical on every platform, which is
// what makes datasets byte-reproducible.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Unbiased integer in [0, bound) via rejection sampling.
    uint64_t uniform_int(uint64_t bound) {
        const uint64_t threshold = (-bound) % bound;  // 2^64 mod bound
        for (;;) {
            uint64_t x = next_u64();
            if (x >= threshold) return x % bound;
        }
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform_double(double lo, double hi) { return lo + (hi - lo) * uniform_double(); }

    // Standard normal via Box-Muller; the second value of each pair is cached
    // so successive calls stay deterministic.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform_double();  // (0,1]
        double u2 = uniform_double();
        double mag = std::sqrt(-2.0 * std::log(u1));
        double ang = 2.0 * std::numbers::pi * u2;
        spare_ = mag * std::sin(ang);
        has_spare_ = true;
        return mag * std::cos(ang);
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t s_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace vtg
