#ifndef SMEVAL_RNG_HPP
#define SMEVAL_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace smeval {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Mix a run seed with a stream index into an independent sub-seed.
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
    uint64_t s = seed;
    const uint64_t a = splitmix64(s);
    s ^= 0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL;
    const uint64_t b = splitmix64(s);
    return a ^ (b + index);
}

/// Independent engine for stream `index` of run seed `seed`. Streams are a
/// pure function of (seed, index), so parallel and serial evaluation agree.
inline std::mt19937_64 derive_stream(uint64_t seed, uint64_t index) {
    return std::mt19937_64(derive_seed(seed, index));
}

/// Uniform double in [0,1) with 53 random bits. Engine-only, so the value
/// stream is identical on every platform.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by rejection; avoids distribution objects
/// whose output is implementation-defined.
inline uint64_t uniform_below(std::mt19937_64& rng, uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

/// First k entries of a seeded Fisher-Yates shuffle of `items`.
template <typename T>
std::vector<T> sample_without_replacement(std::vector<T> items, size_t k,
                                          std::mt19937_64& rng) {
    if (k > items.size()) k = items.size();
    for (size_t i = 0; i < k; ++i) {
        const size_t j = i + static_cast<size_t>(uniform_below(rng, items.size() - i));
        std::swap(items[i], items[j]);
    }
    items.resize(k);
    return items;
}

}  // namespace smeval

#endif
