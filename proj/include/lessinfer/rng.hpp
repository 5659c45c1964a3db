#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "lessinfer/error.hpp"

namespace lessinfer {

// Deterministic random stream used everywhere randomness is needed.
//
// The standard <random> distributions are not required to produce the same
// values on every platform, so this class pairs std::mt19937_64 (whose output
// IS pinned by the standard) with hand-written draw algorithms.  The exact
// algorithms are part of the output-stability contract and documented in the
// README; changing them invalidates recorded results.
class SeedStream {
public:
    explicit SeedStream(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform integer in [0, n) by rejection: draw 64-bit words, discard
    // those >= the largest multiple of n, reduce the rest mod n.  Unbiased
    // and platform-independent.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0) throw argument_error("uniform_below: n must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = eng_();
        while (v >= limit) v = eng_();
        return v % n;
    }

    // Uniform double in [0, 1) with 53 random mantissa bits: top 53 bits of
    // one engine word scaled by 2^-53.
    double uniform_unit() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // k distinct indices drawn uniformly from [0, n), ascending order.
    // Partial Fisher-Yates over an index pool, then sort, so the result is a
    // uniform subset and the output order matches the pool's canonical order.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k) {
        if (k > n) throw argument_error("sample_without_replacement: k exceeds n");
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(uniform_below(n - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

private:
    std::mt19937_64 eng_;
};

// FNV-1a 64-bit hash; used to derive per-cell stream seeds from readable
// cell-key strings and to fingerprint canonical config text.
inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// splitmix64 finalizer; spreads low-entropy seeds over the whole 64-bit range.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Seed for a named substream: mix the base seed with the hashed tag.  Used so
// every (experiment cell) gets an independent, reproducible stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
    return splitmix64(base ^ fnv1a64(tag));
}

}  // namespace lessinfer
