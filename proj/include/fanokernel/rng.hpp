#pragma once

#include <cstdint>

namespace fano {

// splitmix64: tiny, portable, deterministic across platforms. All seeded
// randomness in the kernel (random forms, projections, point sampling)
// flows through this so reports are byte-reproducible.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n) without modulo bias
    uint64_t below(uint64_t n) {
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    uint32_t field_element(uint32_t p) { return uint32_t(below(p)); }
    uint32_t nonzero_field_element(uint32_t p) { return uint32_t(below(p - 1)) + 1; }

    Rng fork(uint64_t salt) {
        Rng r(state ^ (salt * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull));
        r.next();
        return r;
    }
};

}  // namespace fano
