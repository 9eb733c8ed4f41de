#pragma once

#include <cstdint>
#include <random>

namespace latq {

// splitmix64: cheap stateless mixer used to derive independent stream
// seeds from (base seed, stream id, block index) triples.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t base, uint64_t stream, uint64_t block) {
    uint64_t h = splitmix64(base ^ 0x6a09e667f3bcc908ULL);
    h = splitmix64(h ^ splitmix64(stream));
    return splitmix64(h ^ (block * 0x9e3779b97f4a7c15ULL));
}

inline std::mt19937_64 make_rng(uint64_t base, uint64_t stream, uint64_t block) {
    return std::mt19937_64(derive_seed(base, stream, block));
}

}  // namespace latq
