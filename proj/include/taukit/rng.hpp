#pragma once

#include <cstdint>

namespace taukit {

// Counter-based generator (Philox 4x64, 10 rounds). Every draw is a pure
// function of (seed, stream, item, slot), so parallel code indexes the
// sample space directly instead of sharing mutable generator state; the
// resulting streams are identical for any thread count.

struct RngKey {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

namespace detail {

inline void mulhilo64(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

} // namespace detail

inline std::uint64_t philox_word(RngKey key, std::uint64_t item, std::uint64_t slot) {
    constexpr std::uint64_t M0 = 0xD2E7470EE14C6C93ull;
    constexpr std::uint64_t M1 = 0xCA5A826395121157ull;
    constexpr std::uint64_t W0 = 0x9E3779B97F4A7C15ull;
    constexpr std::uint64_t W1 = 0xBB67AE8584CAA73Bull;

    std::uint64_t c0 = item, c1 = slot, c2 = 0x243F6A8885A308D3ull, c3 = 0;
    std::uint64_t k0 = key.seed, k1 = key.stream;
    for (int r = 0; r < 10; ++r) {
        std::uint64_t hi0, lo0, hi1, lo1;
        detail::mulhilo64(M0, c0, hi0, lo0);
        detail::mulhilo64(M1, c2, hi1, lo1);
        std::uint64_t n0 = hi1 ^ c1 ^ k0;
        std::uint64_t n1 = lo1;
        std::uint64_t n2 = hi0 ^ c3 ^ k1;
        std::uint64_t n3 = lo0;
        c0 = n0; c1 = n1; c2 = n2; c3 = n3;
        k0 += W0; k1 += W1;
    }
    return c0;
}

// Strictly inside (0,1), so it is always a legal quantile argument.
inline double uniform_open01(RngKey key, std::uint64_t item, std::uint64_t slot = 0) {
    return (static_cast<double>(philox_word(key, item, slot) >> 11) + 0.5) * 0x1.0p-53;
}

// Sub-slot layout: a coordinate c of sample i may consume up to kSlotsPerCoord
// uniforms, at slots [c*kSlotsPerCoord, (c+1)*kSlotsPerCoord).
inline constexpr std::uint64_t kSlotsPerCoord = 16;

} // namespace taukit
