#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace llr {

/// splitmix64 finalizer; used to decorrelate seeds derived from small integers.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic per-key seed: FNV-1a over the key bytes, folded with the
/// mixed master seed. Evaluation order of grid configurations never affects
/// the stream a given configuration sees.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view key) {
    std::uint64_t h = 0xcbf29ce484222325ull ^ mix64(master_seed);
    for (unsigned char c : key) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return mix64(h);
}

/// mt19937_64 wrapper with portable uniform draws. std::uniform_*_distribution
/// is implementation-defined, so draws are built directly from raw engine
/// output to keep sampled chains identical across standard libraries.
class UniformRng {
public:
    explicit UniformRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). n must be > 0.
    std::size_t next_index(std::size_t n) {
        return static_cast<std::size_t>(next_double() * static_cast<double>(n)) % n;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace llr
