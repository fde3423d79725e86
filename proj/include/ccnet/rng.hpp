#pragma once

#include <cstdint>
#include <random>

namespace ccnet {

// splitmix64 step, used to derive independent sub-streams from one seed.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t mix64(uint64_t a, uint64_t b) { return mix64(mix64(a) ^ b); }

// Deterministic RNG wrapper. Draws go through fixed 64-bit reductions, never
// through std::uniform_*_distribution, so results are identical across
// standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(mix64(seed)) {}

    uint64_t next() { return gen_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) {
        if (p >= 1.0) return true;
        if (p <= 0.0) return false;
        return uniform01() < p;
    }

    // Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[uniform_int(0, static_cast<int>(i) - 1)]);
    }

private:
    std::mt19937_64 gen_;
};

// Sub-stream keyed by (seed, tag) or (seed, tag, index); adding more rounds
// to a sampling plan never reshuffles draws of earlier rounds.
inline Rng substream(uint64_t seed, uint64_t tag) { return Rng(mix64(seed, tag)); }
inline Rng substream(uint64_t seed, uint64_t tag, uint64_t idx) {
    return Rng(mix64(mix64(seed, tag), idx));
}

}  // namespace ccnet
