#pragma once

// Deterministic byte stream derived from a 32-byte seed via Keccak-256 in
// counter mode. Used wherever reproducible "randomness" is needed: Miller-
// Rabin bases, test modulus generation, fixtures.

#include <array>
#include <cstdint>
#include <cstring>

#include "vdfgas/bignum.hpp"
#include "vdfgas/errors.hpp"
#include "vdfgas/keccak.hpp"

namespace vdfgas {

using Seed = std::array<std::uint8_t, 32>;

inline Seed seed_from_hex(std::string_view hex) {
    const Bytes raw = hex_to_bytes(hex);
    if (raw.size() != 32) {
        throw InvalidInputError("seed must be exactly 32 bytes of hex");
    }
    Seed s{};
    std::memcpy(s.data(), raw.data(), 32);
    return s;
}

// Convenience for tests: pad/truncate an ASCII label into a seed.
inline Seed seed_from_label(std::string_view label) {
    Seed s{};
    for (std::size_t i = 0; i < s.size() && i < label.size(); ++i) {
        s[i] = static_cast<std::uint8_t>(label[i]);
    }
    return s;
}

class KeccakStream {
public:
    explicit KeccakStream(const Seed& seed) : seed_(seed) {}

    std::uint8_t next_byte() {
        if (pos_ >= block_.size()) {
            refill();
        }
        return block_[pos_++];
    }

    void fill(std::uint8_t* out, std::size_t len) {
        for (std::size_t i = 0; i < len; ++i) {
            out[i] = next_byte();
        }
    }

    Bytes take(std::size_t n) {
        Bytes out(n);
        fill(out.data(), n);
        return out;
    }

    std::uint64_t next_u64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) {
            v = (v << 8) | next_byte();
        }
        return v;
    }

    // Uniform in [0, bound) by rejection sampling.
    Natural below(const Natural& bound) {
        if (bound < 1) {
            throw InvalidInputError("KeccakStream::below: bound must be positive");
        }
        if (bound == 1) {
            return Natural(0);
        }
        const std::size_t bits = bit_length(bound - 1);
        const std::size_t nbytes = (bits + 7) / 8;
        const unsigned top_mask = bits % 8 == 0 ? 0xFF : (1u << (bits % 8)) - 1;
        for (;;) {
            Bytes raw = take(nbytes);
            raw[0] &= static_cast<std::uint8_t>(top_mask);
            Natural v;
            boost::multiprecision::import_bits(v, raw.begin(), raw.end(), 8);
            if (v < bound) {
                return v;
            }
        }
    }

    // Uniform in [lo, hi], inclusive.
    Natural in_range(const Natural& lo, const Natural& hi) {
        if (lo > hi) {
            throw InvalidInputError("KeccakStream::in_range: empty range");
        }
        return lo + below(hi - lo + 1);
    }

private:
    void refill() {
        Bytes input(seed_.begin(), seed_.end());
        for (int i = 7; i >= 0; --i) {
            input.push_back(static_cast<std::uint8_t>(counter_ >> (8 * i)));
        }
        block_ = keccak256(input);
        ++counter_;
        pos_ = 0;
    }

    Seed seed_;
    std::uint64_t counter_ = 0;
    Digest block_{};
    std::size_t pos_ = block_.size();
};

}  // namespace vdfgas
