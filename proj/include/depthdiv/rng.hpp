#pragma once

#include <cstdint>

namespace depthdiv {

// splitmix64: expands a 64-bit seed into well-mixed words.
// Used only for seeding the main generator.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256++ (Blackman & Vigna, 2019). Chosen over std::mt19937 because
// the output stream is fully specified by the algorithm itself: the same
// seed reproduces the same draws bit-for-bit on every platform and
// standard-library version.
class Xoshiro256PlusPlus {
public:
    explicit Xoshiro256PlusPlus(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double strictly inside (0,1): 2^52 equally spaced values
    // ((k + 1/2) * 2^-52), so inverse-CDF sampling never sees u = 0 or 1.
    double uniform_open01() {
        return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

}  // namespace depthdiv
