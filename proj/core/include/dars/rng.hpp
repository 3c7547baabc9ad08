#pragma once

#include <cstdint>
#include <string_view>

namespace dars {

// 64-bit finalizer from splitmix64. Full-period bijection on uint64.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Stateless counter-based random stream. A value depends only on
// (key, counter), never on how many values were drawn before it, so
// concurrent producers reading disjoint counters agree bit-for-bit
// with a single sequential reader.
class CounterRng {
public:
    CounterRng() = default;
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    // key = f(seed, label, stream); label is typically a query id.
    static CounterRng keyed(std::uint64_t seed, std::string_view label, std::uint64_t stream = 0) {
        std::uint64_t k = mix64(seed ^ mix64(fnv1a64(label)));
        k = mix64(k ^ (0xa0761d6478bd642fULL * (stream + 1)));
        return CounterRng(k);
    }

    std::uint64_t word(std::uint64_t counter) const {
        return mix64(key_ ^ mix64(counter * 0xe7037ed1a0b428dbULL + 0x8ebc6af09c88c6e3ULL));
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(word(counter) >> 11) * 0x1.0p-53;
    }

    // Uniform double in [lo, hi).
    double uniform(std::uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * uniform(counter);
    }

    // Unbiased integer in [0, n) via rejection on the top bits.
    std::uint64_t below(std::uint64_t counter, std::uint64_t n) const {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t c = counter;
        std::uint64_t w = word(c);
        while (w >= limit) w = word(c += 0x632be59bd9b4e019ULL);
        return w % n;
    }

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_ = 0;
};

// In-place Fisher-Yates keyed by a seed. Implementation-defined std::shuffle
// orderings would break byte-stable outputs across standard libraries.
template <typename Vec>
void deterministic_shuffle(Vec& v, std::uint64_t seed) {
    CounterRng rng(mix64(seed ^ 0x5851f42d4c957f2dULL));
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i, i));
        using std::swap;
        swap(v[i - 1], v[j]);
    }
}

}  // namespace dars
