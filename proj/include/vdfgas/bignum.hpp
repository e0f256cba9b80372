#pragma once

// Arbitrary-precision unsigned integers and their EVM word-aligned wire form.
//
// A Natural is a plain non-negative big integer. An EvmBigNumber carries the
// same value as a big-endian byte string padded with leading zeros to a
// 32-byte boundary, together with the significant bit count. The byte form is
// what gets hashed for challenges and shipped as calldata, so both users see
// one canonical encoding.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <string_view>

#include "vdfgas/errors.hpp"
#include "vdfgas/keccak.hpp"

namespace vdfgas {

using Natural = boost::multiprecision::cpp_int;

// Position of the highest set bit; 0 for 0.
inline std::size_t bit_length(const Natural& u) {
    if (u.is_zero()) {
        return 0;
    }
    return static_cast<std::size_t>(boost::multiprecision::msb(u)) + 1;
}

inline Natural mod_mul(const Natural& a, const Natural& b, const Natural& n) {
    if (n < 2) {
        throw InvalidModulusError("mod_mul: modulus must be at least 2");
    }
    return (a * b) % n;
}

// base^exp mod n; exp = 0 yields 1. Inputs are public, so no attempt at
// constant-time behavior is made.
inline Natural mod_exp(const Natural& base, const Natural& exp, const Natural& n) {
    if (n < 2) {
        throw InvalidModulusError("mod_exp: modulus must be at least 2");
    }
    if (exp < 0) {
        throw InvalidInputError("mod_exp: exponent must be non-negative");
    }
    return boost::multiprecision::powm(base % n, exp, n);
}

struct EvmBigNumber {
    Bytes val;           // big-endian, length a multiple of 32; empty for zero
    std::size_t bitlen;  // significant bit count

    bool operator==(const EvmBigNumber&) const = default;
};

inline std::size_t evm_word_bytes(std::size_t bitlen) {
    return 32 * ((bitlen + 255) / 256);
}

inline EvmBigNumber to_evm(const Natural& u) {
    if (u < 0) {
        throw InvalidInputError("to_evm: value must be non-negative");
    }
    EvmBigNumber out;
    out.bitlen = bit_length(u);
    if (out.bitlen == 0) {
        return out;  // zero encodes as an empty byte string
    }
    Bytes raw;
    boost::multiprecision::export_bits(u, std::back_inserter(raw), 8);
    out.val.assign(evm_word_bytes(out.bitlen) - raw.size(), 0);
    out.val.insert(out.val.end(), raw.begin(), raw.end());
    return out;
}

inline Natural from_evm(const EvmBigNumber& e) {
    if (e.bitlen == 0) {
        if (!e.val.empty()) {
            throw MalformedBigNumberError("from_evm: zero bitlen requires empty val");
        }
        return Natural(0);
    }
    if (e.val.size() != evm_word_bytes(e.bitlen)) {
        throw MalformedBigNumberError("from_evm: val length does not match bitlen");
    }
    Natural u;
    boost::multiprecision::import_bits(u, e.val.begin(), e.val.end(), 8);
    if (bit_length(u) != e.bitlen) {
        throw MalformedBigNumberError("from_evm: bitlen does not match encoded value");
    }
    return u;
}

// --- hex helpers ------------------------------------------------------------

inline std::string bytes_to_hex(std::span<const std::uint8_t> data) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * data.size());
    for (std::uint8_t b : data) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0F]);
    }
    return out;
}

inline int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

// Accepts an optional "0x" prefix; requires an even digit count.
inline Bytes hex_to_bytes(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) {
        hex.remove_prefix(2);
    }
    if (hex.size() % 2 != 0) {
        throw InvalidInputError("hex string must have an even number of digits");
    }
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        const int hi = hex_nibble(hex[i]);
        const int lo = hex_nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) {
            throw InvalidInputError("hex string contains a non-hex character");
        }
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

// "0x"-prefixed lowercase hex with an even number of digits; zero is "0x00".
inline std::string natural_to_hex(const Natural& u) {
    if (u.is_zero()) {
        return "0x00";
    }
    Bytes raw;
    boost::multiprecision::export_bits(u, std::back_inserter(raw), 8);
    return "0x" + bytes_to_hex(raw);
}

inline Natural natural_from_hex(std::string_view hex) {
    const Bytes raw = hex_to_bytes(hex);
    if (raw.empty()) {
        return Natural(0);
    }
    Natural u;
    boost::multiprecision::import_bits(u, raw.begin(), raw.end(), 8);
    return u;
}

}  // namespace vdfgas
