#pragma once

// ABI encoding of the verifyRecursiveHalvingProof call.
//
// Signature: verifyRecursiveHalvingProof((bytes,uint256)[],(bytes,uint256),
// (bytes,uint256),(bytes,uint256),uint256,uint256) with parameters
// (v, x, y, n, delta, T). Each (bytes,uint256) pair is a big number: its
// word-aligned bytes and its bit length.
//
// Layout after the 4-byte selector: a 6-word head (offsets for the four
// dynamic parameters, then delta and T), followed by the tails. The array
// tail is a length word, per-element offset words, then the element tuples;
// every tuple is [0x40][bitlen][byte count][word-aligned bytes]. The encoder
// is canonical and the decoder rejects anything the encoder would not emit.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vdfgas/bignum.hpp"
#include "vdfgas/errors.hpp"
#include "vdfgas/keccak.hpp"

namespace vdfgas {

inline constexpr std::string_view kVerifyCallSignature =
    "verifyRecursiveHalvingProof((bytes,uint256)[],(bytes,uint256),(bytes,uint256),"
    "(bytes,uint256),uint256,uint256)";

using Selector = std::array<std::uint8_t, 4>;

// Strips every whitespace character; ABI selectors are defined over the
// canonical signature with none.
inline std::string canonical_signature(std::string_view signature) {
    std::string out;
    out.reserve(signature.size());
    for (char c : signature) {
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
            out.push_back(c);
        }
    }
    return out;
}

inline Selector selector(std::string_view signature) {
    const Digest digest = keccak256(signature);
    return {digest[0], digest[1], digest[2], digest[3]};
}

struct ProofCall {
    std::vector<EvmBigNumber> v;
    EvmBigNumber x;
    EvmBigNumber y;
    EvmBigNumber n;
    std::uint64_t delta = 0;
    std::uint64_t T = 0;

    bool operator==(const ProofCall&) const = default;
};

struct CallPayload {
    Bytes bytes;
};

namespace detail {

inline void append_word_u64(Bytes& out, std::uint64_t value) {
    out.insert(out.end(), 24, 0);
    for (int i = 7; i >= 0; --i) {
        out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
    }
}

inline void check_evm_number(const EvmBigNumber& e) {
    from_evm(e);  // validates alignment and bitlen consistency
}

// Tuple tail for one big number: inner offset, bitlen, byte count, bytes.
inline void append_tuple(Bytes& out, const EvmBigNumber& e) {
    append_word_u64(out, 0x40);
    append_word_u64(out, e.bitlen);
    append_word_u64(out, e.val.size());
    out.insert(out.end(), e.val.begin(), e.val.end());
}

inline std::size_t tuple_size(const EvmBigNumber& e) {
    return 96 + e.val.size();
}

}  // namespace detail

inline CallPayload encode_call(const ProofCall& call) {
    for (const EvmBigNumber* e : {&call.x, &call.y, &call.n}) {
        detail::check_evm_number(*e);
    }
    for (const EvmBigNumber& e : call.v) {
        detail::check_evm_number(e);
    }

    const std::size_t m = call.v.size();
    std::size_t array_tail = 32 + 32 * m;
    for (const EvmBigNumber& e : call.v) {
        array_tail += detail::tuple_size(e);
    }

    CallPayload payload;
    Bytes& out = payload.bytes;
    const Selector sel = selector(kVerifyCallSignature);
    out.insert(out.end(), sel.begin(), sel.end());

    // Head: four tail offsets (relative to the start of the head), delta, T.
    std::size_t offset = 192;
    detail::append_word_u64(out, offset);  // v
    offset += array_tail;
    detail::append_word_u64(out, offset);  // x
    offset += detail::tuple_size(call.x);
    detail::append_word_u64(out, offset);  // y
    offset += detail::tuple_size(call.y);
    detail::append_word_u64(out, offset);  // n
    detail::append_word_u64(out, call.delta);
    detail::append_word_u64(out, call.T);

    // Array tail: length, element offsets relative to the element area.
    detail::append_word_u64(out, m);
    std::size_t elem_offset = 32 * m;
    for (const EvmBigNumber& e : call.v) {
        detail::append_word_u64(out, elem_offset);
        elem_offset += detail::tuple_size(e);
    }
    for (const EvmBigNumber& e : call.v) {
        detail::append_tuple(out, e);
    }

    detail::append_tuple(out, call.x);
    detail::append_tuple(out, call.y);
    detail::append_tuple(out, call.n);
    return payload;
}

namespace detail {

class PayloadReader {
public:
    explicit PayloadReader(const Bytes& body) : body_(body) {}

    std::uint64_t word_u64(std::size_t pos) const {
        require(pos + 32 <= body_.size(), "word extends past payload end");
        for (std::size_t i = 0; i < 24; ++i) {
            require(body_[pos + i] == 0, "word does not fit in 64 bits");
        }
        std::uint64_t v = 0;
        for (std::size_t i = 24; i < 32; ++i) {
            v = (v << 8) | body_[pos + i];
        }
        return v;
    }

    EvmBigNumber tuple(std::size_t pos) const {
        require(word_u64(pos) == 0x40, "tuple inner offset must be 0x40");
        EvmBigNumber e;
        e.bitlen = word_u64(pos + 32);
        const std::uint64_t len = word_u64(pos + 64);
        require(len % 32 == 0, "big number bytes must be word-aligned");
        require(pos + 96 + len <= body_.size(), "big number bytes extend past payload end");
        e.val.assign(body_.begin() + static_cast<std::ptrdiff_t>(pos + 96),
                     body_.begin() + static_cast<std::ptrdiff_t>(pos + 96 + len));
        return e;
    }

    static void require(bool ok, const char* message) {
        if (!ok) {
            throw MalformedPayloadError(std::string("decode_call: ") + message);
        }
    }

private:
    const Bytes& body_;
};

}  // namespace detail

inline ProofCall decode_call(const CallPayload& payload) {
    const Bytes& raw = payload.bytes;
    detail::PayloadReader::require(raw.size() >= 4, "payload shorter than a selector");
    const Selector expected = selector(kVerifyCallSignature);
    if (!std::equal(expected.begin(), expected.end(), raw.begin())) {
        throw SelectorMismatchError("decode_call: unexpected function selector");
    }
    detail::PayloadReader::require((raw.size() - 4) % 32 == 0,
                                   "body length must be a multiple of 32");

    const Bytes body(raw.begin() + 4, raw.end());
    const detail::PayloadReader reader(body);

    ProofCall call;
    const std::uint64_t off_v = reader.word_u64(0);
    const std::uint64_t off_x = reader.word_u64(32);
    const std::uint64_t off_y = reader.word_u64(64);
    const std::uint64_t off_n = reader.word_u64(96);
    call.delta = reader.word_u64(128);
    call.T = reader.word_u64(160);

    detail::PayloadReader::require(off_v == 192, "array offset must follow the head");
    const std::uint64_t m = reader.word_u64(off_v);
    detail::PayloadReader::require(m <= (body.size() - off_v) / 32,
                                   "array length exceeds payload capacity");

    std::uint64_t expect_elem_offset = 32 * m;
    std::uint64_t cursor = off_v + 32 + 32 * m;  // first element tuple
    call.v.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        const std::uint64_t elem_offset = reader.word_u64(off_v + 32 + 32 * i);
        detail::PayloadReader::require(elem_offset == expect_elem_offset,
                                       "element offset is not canonical");
        EvmBigNumber e = reader.tuple(cursor);
        expect_elem_offset += detail::tuple_size(e);
        cursor += detail::tuple_size(e);
        call.v.push_back(std::move(e));
    }

    detail::PayloadReader::require(off_x == cursor, "x offset is not canonical");
    call.x = reader.tuple(cursor);
    cursor += detail::tuple_size(call.x);
    detail::PayloadReader::require(off_y == cursor, "y offset is not canonical");
    call.y = reader.tuple(cursor);
    cursor += detail::tuple_size(call.y);
    detail::PayloadReader::require(off_n == cursor, "n offset is not canonical");
    call.n = reader.tuple(cursor);
    cursor += detail::tuple_size(call.n);
    detail::PayloadReader::require(cursor == body.size(), "trailing bytes after payload");

    for (const EvmBigNumber* e : {&call.x, &call.y, &call.n}) {
        from_evm(*e);
    }
    for (const EvmBigNumber& e : call.v) {
        from_evm(e);
    }
    return call;
}

// Closed-form payload size for tau - delta proof elements of full lambda-bit
// width (top word non-zero), matching encode_call byte for byte.
inline std::size_t payload_size(unsigned lambda, unsigned tau, unsigned delta) {
    if (delta > tau) {
        throw InvalidDeltaError("payload_size: delta exceeds tau");
    }
    const std::size_t m = tau - delta;
    const std::size_t w = evm_word_bytes(lambda);
    return 4 + 192 + (32 + 32 * m + m * (96 + w)) + 3 * (96 + w);
}

// Two-decimal KB figure (1 KB = 1024 bytes) used in size reports.
inline double payload_kb(std::size_t bytes) {
    return std::round(static_cast<double>(bytes) / 1024.0 * 100.0) / 100.0;
}

}  // namespace vdfgas
