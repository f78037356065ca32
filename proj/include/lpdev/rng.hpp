#pragma once

#include <array>
#include <cstdint>

namespace lpdev::rng {

// Philox4x32-10 counter-based generator. The value of a block is a pure
// function of (key, counter), so any entry of any stream can be produced
// independently and in any order.
struct Philox4x32 {
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::uint64_t key,
                                              std::array<std::uint32_t, 4> ctr) {
        std::uint32_t k0 = static_cast<std::uint32_t>(key);
        std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        return ctr;
    }
};

struct Block128 {
    std::uint64_t lo;
    std::uint64_t hi;
};

// One 128-bit block per (seed, stream, i, j). Counter words carry (i, j,
// stream); the key carries the seed, so distinct seeds and streams are
// independent pseudo-random sequences.
inline Block128 entry_block(std::uint64_t seed, std::uint64_t stream,
                            std::uint32_t i, std::uint32_t j) {
    const std::array<std::uint32_t, 4> ctr = {
        i, j, static_cast<std::uint32_t>(stream),
        static_cast<std::uint32_t>(stream >> 32)};
    const auto out = Philox4x32::block(seed, ctr);
    return {static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32),
            static_cast<std::uint64_t>(out[2]) | (static_cast<std::uint64_t>(out[3]) << 32)};
}

// splitmix64 finalizer; used to derive sub-stream ids from (stream, tag)
// pairs without risking overlap between unrelated consumers.
inline std::uint64_t mix64(std::uint64_t x, std::uint64_t y) {
    std::uint64_t z = x + 0x9E3779B97F4A7C15ull * (y + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// uniform in [0, 1), 53-bit resolution
inline double u01(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// uniform in (0, 1], safe as a log argument
inline double u01_positive(std::uint64_t bits) {
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// unbiased index in [0, n) via 128-bit multiply
inline std::uint64_t bounded(std::uint64_t bits, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(bits) * n) >> 64);
}

}  // namespace lpdev::rng
