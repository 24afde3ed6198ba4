#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace treecot {

// FNV-1a over bytes; used to derive stateless per-call RNG seeds so that
// results cannot depend on thread scheduling or batch order.
struct Fnv1a {
    std::uint64_t state = 14695981039346656037ull;

    void feed_byte(unsigned char b) {
        state ^= b;
        state *= 1099511628211ull;
    }
    void feed(std::string_view s) {
        for (unsigned char c : s) feed_byte(c);
        feed_byte(0xff);  // separator: feed("ab"),feed("c") != feed("a"),feed("bc")
    }
    void feed(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) feed_byte(static_cast<unsigned char>(v >> (8 * i)));
        feed_byte(0xfe);
    }
    void feed(std::int64_t v) { feed(static_cast<std::uint64_t>(v)); }
    void feed(int v) { feed(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
};

// Tiny, fast, well-distributed PRNG (SplitMix64). Good enough for sampling;
// the point is reproducibility, not cryptography.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : x_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (x_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n). n must be > 0. Rejection-free modulo is fine here:
    // n is tiny relative to 2^64, the bias is far below anything observable.
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t x_;
};

// Canonical way to build a call-scoped seed: hash the global seed plus every
// input that identifies the call site (problem id, prefix texts, a tag, an
// ordinal). Stateless by construction.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag,
                                 std::string_view problem_id,
                                 const std::vector<std::string>& texts,
                                 std::uint64_t ordinal = 0) {
    Fnv1a h;
    h.feed(base);
    h.feed(tag);
    h.feed(problem_id);
    for (const auto& t : texts) h.feed(t);
    h.feed(ordinal);
    return h.state;
}

// Partial Fisher-Yates: returns k distinct indices drawn from [0, n).
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, SplitMix64& rng) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    if (k > n) k = n;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace treecot
