#pragma once

// Keccak-256 as used by Ethereum: the original Keccak padding (0x01),
// not the SHA-3 variant (0x06). Rate 1088 bits, capacity 512, 32-byte digest.

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace vdfgas {

using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

namespace detail {

inline constexpr std::array<std::uint64_t, 24> kKeccakRoundConstants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

inline constexpr std::array<int, 24> kRhoOffsets = {
    1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 2, 14,
    27, 41, 56, 8, 25, 43, 62, 18, 39, 61, 20, 44,
};

inline constexpr std::array<int, 24> kPiLanes = {
    10, 7, 11, 17, 18, 3, 5, 16, 8, 21, 24, 4,
    15, 23, 19, 13, 12, 2, 20, 14, 22, 9, 6, 1,
};

inline void keccak_f1600(std::array<std::uint64_t, 25>& state) {
    for (int round = 0; round < 24; ++round) {
        // theta
        std::uint64_t c[5];
        for (int x = 0; x < 5; ++x) {
            c[x] = state[x] ^ state[x + 5] ^ state[x + 10] ^ state[x + 15] ^ state[x + 20];
        }
        for (int x = 0; x < 5; ++x) {
            const std::uint64_t d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5) {
                state[x + y] ^= d;
            }
        }
        // rho and pi
        std::uint64_t lane = state[1];
        for (int i = 0; i < 24; ++i) {
            const int j = kPiLanes[i];
            const std::uint64_t tmp = state[j];
            state[j] = std::rotl(lane, kRhoOffsets[i]);
            lane = tmp;
        }
        // chi
        for (int y = 0; y < 25; y += 5) {
            std::uint64_t row[5];
            for (int x = 0; x < 5; ++x) {
                row[x] = state[y + x];
            }
            for (int x = 0; x < 5; ++x) {
                state[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
            }
        }
        // iota
        state[0] ^= kKeccakRoundConstants[round];
    }
}

}  // namespace detail

inline Digest keccak256(std::span<const std::uint8_t> data) {
    constexpr std::size_t kRate = 136;  // 1088-bit rate in bytes

    std::array<std::uint64_t, 25> state{};
    std::array<std::uint8_t, kRate> block{};

    std::size_t offset = 0;
    auto absorb = [&state](const std::uint8_t* chunk) {
        for (std::size_t lane = 0; lane < kRate / 8; ++lane) {
            std::uint64_t word = 0;
            for (int b = 7; b >= 0; --b) {
                word = (word << 8) | chunk[8 * lane + static_cast<std::size_t>(b)];
            }
            state[lane] ^= word;
        }
        detail::keccak_f1600(state);
    };

    while (data.size() - offset >= kRate) {
        absorb(data.data() + offset);
        offset += kRate;
    }

    // Final block with original Keccak padding: 0x01 ... 0x80.
    block.fill(0);
    const std::size_t rem = data.size() - offset;
    if (rem > 0) {
        std::memcpy(block.data(), data.data() + offset, rem);
    }
    block[rem] ^= 0x01;
    block[kRate - 1] ^= 0x80;
    absorb(block.data());

    Digest out{};
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(state[i / 8] >> (8 * (i % 8)));
    }
    return out;
}

inline Digest keccak256(const Bytes& data) {
    return keccak256(std::span<const std::uint8_t>(data.data(), data.size()));
}

inline Digest keccak256(std::string_view text) {
    return keccak256(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace vdfgas
