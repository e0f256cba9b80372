#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "vdfgas/bignum.hpp"
#include "vdfgas/rng.hpp"

using namespace vdfgas;

TEST_CASE("mod_mul basics") {
    CHECK(mod_mul(3, 4, 5) == 2);
    CHECK(mod_mul(0, 9, 7) == 0);

    // 2^128 = (2^64+1)(2^64-1) + 1, checked against direct big-int arithmetic
    const Natural two64 = Natural(1) << 64;
    const Natural n = two64 + 1;
    CHECK((Natural(1) << 128) % n == 1);
    CHECK(mod_mul(two64, two64, n) == 1);

    CHECK_THROWS_AS(mod_mul(1, 1, 1), InvalidModulusError);
    CHECK_THROWS_AS(mod_mul(1, 1, 0), InvalidModulusError);
}

TEST_CASE("mod_exp basics") {
    CHECK(mod_exp(2, 16, 35) == 16);
    CHECK(mod_exp(5, 0, 7) == 1);

    KeccakStream rng(seed_from_label("mod_exp identity"));
    for (int i = 0; i < 20; ++i) {
        const Natural n = rng.in_range(2, 1000000);
        const Natural x = rng.below(n * 2);
        CHECK(mod_exp(x, 1, n) == x % n);
    }

    CHECK_THROWS_AS(mod_exp(2, 3, 1), InvalidModulusError);
}

TEST_CASE("mod_exp agrees with naive square-and-multiply") {
    KeccakStream rng(seed_from_label("mod_exp oracle"));
    for (int i = 0; i < 2000; ++i) {
        const Natural n = rng.in_range(2, (Natural(1) << 16) - 1);
        const Natural b = rng.below(Natural(1) << 16);
        const Natural e = rng.below(Natural(1) << 16);
        CAPTURE(b, e, n);
        REQUIRE(mod_exp(b, e, n) == oracles::naive_mod_exp(b, e, n));
    }
}

TEST_CASE("mod_exp is additive in the exponent") {
    KeccakStream rng(seed_from_label("exp additivity"));
    for (int i = 0; i < 200; ++i) {
        const Natural n = rng.in_range(2, 100000);
        const Natural b = rng.below(n);
        const Natural e1 = rng.below(500);
        const Natural e2 = rng.below(500);
        CHECK(mod_exp(b, e1 + e2, n) ==
              mod_mul(mod_exp(b, e1, n), mod_exp(b, e2, n), n));
    }
}

TEST_CASE("bit_length") {
    CHECK(bit_length(0) == 0);
    CHECK(bit_length(255) == 8);
    CHECK(bit_length(256) == 9);
    CHECK(bit_length(1) == 1);
    CHECK(bit_length((Natural(1) << 2047) - 1) == 2047);
}

TEST_CASE("to_evm word alignment") {
    SECTION("one") {
        const EvmBigNumber e = to_evm(1);
        REQUIRE(e.val.size() == 32);
        CHECK(e.bitlen == 1);
        for (std::size_t i = 0; i < 31; ++i) {
            CHECK(e.val[i] == 0);
        }
        CHECK(e.val[31] == 0x01);
    }
    SECTION("zero") {
        const EvmBigNumber e = to_evm(0);
        CHECK(e.val.empty());
        CHECK(e.bitlen == 0);
    }
    SECTION("2047-bit value occupies 256 bytes") {
        KeccakStream rng(seed_from_label("2047"));
        const Natural v = oracles::random_with_bits(rng, 2047);
        const EvmBigNumber e = to_evm(v);
        CHECK(e.val.size() == 256);
        CHECK(e.bitlen == 2047);
        CHECK(e.val[0] < 0x80);  // top bit of the word is the alignment slack
    }
    SECTION("2033-bit value pads to 256 bytes") {
        const EvmBigNumber e = to_evm(Natural(1) << 2032);
        CHECK(e.val.size() == 256);
        CHECK(e.bitlen == 2033);
        CHECK(e.val[0] == 0);  // leading zero byte from alignment
    }
}

TEST_CASE("from_evm decoding and validation") {
    CHECK(from_evm(to_evm(12345)) == 12345);

    EvmBigNumber sixteen;
    sixteen.val.assign(32, 0);
    sixteen.val[31] = 0x10;
    sixteen.bitlen = 5;
    CHECK(from_evm(sixteen) == 16);

    EvmBigNumber liar;
    liar.val.assign(32, 0);
    liar.val[0] = 0xFF;
    liar.bitlen = 8;
    CHECK_THROWS_AS(from_evm(liar), MalformedBigNumberError);

    EvmBigNumber zero_with_bytes;
    zero_with_bytes.val.assign(32, 0);
    zero_with_bytes.bitlen = 0;
    CHECK_THROWS_AS(from_evm(zero_with_bytes), MalformedBigNumberError);

    EvmBigNumber misaligned;
    misaligned.val.assign(16, 0);
    misaligned.val[15] = 1;
    misaligned.bitlen = 1;
    CHECK_THROWS_AS(from_evm(misaligned), MalformedBigNumberError);
}

TEST_CASE("to_evm round trip across widths") {
    KeccakStream rng(seed_from_label("roundtrip widths"));
    for (int i = 0; i < 300; ++i) {
        const std::size_t bits = static_cast<std::size_t>(rng.next_u64() % 4097);
        const Natural u = bits == 0 ? Natural(0) : oracles::random_with_bits(rng, bits);
        const EvmBigNumber e = to_evm(u);
        CHECK(from_evm(e) == u);
        CHECK(e.bitlen == bit_length(u));
        CHECK(e.val.size() % 32 == 0);
        CHECK(e.val.size() == evm_word_bytes(e.bitlen));
    }
}

TEST_CASE("hex helpers") {
    CHECK(natural_to_hex(0) == "0x00");
    CHECK(natural_to_hex(255) == "0xff");
    CHECK(natural_to_hex(256) == "0x0100");
    CHECK(natural_from_hex("0x10") == 16);
    CHECK(natural_from_hex("0x") == 0);
    CHECK(natural_from_hex("FF") == 255);  // prefix optional, case accepted

    KeccakStream rng(seed_from_label("hex roundtrip"));
    for (int i = 0; i < 100; ++i) {
        const Natural u = rng.below(Natural(1) << 300);
        CHECK(natural_from_hex(natural_to_hex(u)) == u);
    }

    CHECK_THROWS_AS(natural_from_hex("0x1"), InvalidInputError);
    CHECK_THROWS_AS(natural_from_hex("0xzz"), InvalidInputError);
}
