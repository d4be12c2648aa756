#pragma once

#include <cstdint>

#include "abgeo/rational.hpp"

namespace abgeo {

// Counter-based splitmix generator.  Streams are derived by hashing, so any
// (seed, stream, index) triple names one draw independent of thread layout —
// the determinism contract for every sampler in this project.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}
    Rng(uint64_t seed, uint64_t stream) : state(mix(seed ^ mix(stream))) {}

    static uint64_t mix(uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1).
    double next_unit() { return double(next() >> 11) * 0x1.0p-53; }

    // Strictly positive dyadic rational k/65536, k in 1..65536.
    Rat next_dyadic() { return Rat(Int(next() % 65536 + 1), Int(65536)); }

    // Signed dyadic rational in [-1, 1].
    Rat next_signed_dyadic() { return Rat(Int(next() % 131073) - 65536, Int(65536)); }
};

} // namespace abgeo
