#pragma once

#include <cstdint>
#include <random>

namespace perclab {

// Stream derivation: replica/block streams are split off a root seed with a
// SplitMix64 finalizer, so results do not depend on how work is chunked
// across threads. Same (root, stream) always yields the same generator.
inline std::uint64_t derive_stream_seed(std::uint64_t root, std::uint64_t stream) {
    std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0,1) with 53 random bits; avoids std::uniform_real_distribution
    // so bit streams are identical across standard libraries.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 gen_;
};

}  // namespace perclab
