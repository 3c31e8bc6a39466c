#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace solis {

// Deterministic PRNG used everywhere randomness is needed. The generator is
// a splitmix64 sequence, and child streams are derived by remixing the
// parent seed with a tag, so (seed, path) pins every draw in the pipeline
// independently of platform, thread count, or call interleaving.
//
// std::random distributions are deliberately avoided: their output is
// implementation-defined, which would break run-to-run byte equality of
// reports across standard libraries.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n). Multiply-shift bound; bias is negligible for
    // the n used here (n << 2^64) and the mapping is fully deterministic.
    std::uint64_t uniform_int(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Standard normal via Box-Muller (pair cached).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Child stream for a tagged purpose; independent of draws on the parent.
    RngStream child(std::uint64_t tag) const {
        return RngStream(mix(state_ ^ mix(tag ^ 0xA5A5A5A55A5A5A5Aull)));
    }

    // Derive a stream from a root seed along a path of indices, e.g.
    // derive(seed, {kFoldStream, fold, epoch}).
    static RngStream derive(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
        std::uint64_t s = mix(root);
        for (std::uint64_t p : path) s = mix(s ^ mix(p ^ 0xC2B2AE3D27D4EB4Full));
        return RngStream(s);
    }

    // In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Stream purpose tags (first path component under the experiment seed).
namespace rng_tag {
inline constexpr std::uint64_t kFolds = 1;
inline constexpr std::uint64_t kValSplit = 2;
inline constexpr std::uint64_t kModelInit = 3;
inline constexpr std::uint64_t kEpochShuffle = 4;
inline constexpr std::uint64_t kTransform = 5;
inline constexpr std::uint64_t kSynth = 6;
inline constexpr std::uint64_t kDropout = 7;
}  // namespace rng_tag

}  // namespace solis
