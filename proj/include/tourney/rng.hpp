#pragma once

#include <cstdint>
#include <vector>

namespace tourney {

/// SplitMix64. Chosen over std::mt19937_64 + std::shuffle because the exact
/// stream must be reproducible across platforms and standard libraries; the
/// benchmark records are keyed by it.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound) via rejection sampling; bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

private:
    std::uint64_t state_;
};

/// Collapse a tuple of cell coordinates into one seed. Each field passes
/// through the SplitMix64 finalizer so nearby cells get unrelated streams.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) {
    SplitMix64 s(base);
    std::uint64_t h = s.next();
    h ^= SplitMix64(h + a).next();
    h ^= SplitMix64(h + b).next();
    h ^= SplitMix64(h + c).next();
    return h;
}

/// Uniform random permutation of {0..n-1} by Fisher-Yates.
inline std::vector<int> random_permutation(int n, SplitMix64& rng) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    return perm;
}

} // namespace tourney
