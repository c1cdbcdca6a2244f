#pragma once

#include <cstdint>
#include <random>

namespace plaus {

// splitmix64; used to derive independent streams from (seed, index) pairs
// so that parallel work never shares generator state.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic across standard libraries: raw mt19937_64 draws only, no
// std distributions (their algorithms are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // uniform in [0, n) by rejection; n > 0
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = engine_();
        while (v >= limit) v = engine_();
        return v % n;
    }

    int range(int lo, int hi) {  // inclusive
        return lo + int(below(std::uint64_t(hi - lo + 1)));
    }

    bool chance(int num, int den) { return below(std::uint64_t(den)) < std::uint64_t(num); }

private:
    std::mt19937_64 engine_;
};

}  // namespace plaus
