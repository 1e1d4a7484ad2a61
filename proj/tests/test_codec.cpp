#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bitset>
#include <set>
#include <string>

#include "odris/codec.hpp"

using namespace odris;

TEST_CASE("gray encode examples") {
    CHECK(gray_bits(0, 4) == "0000");
    CHECK(gray_bits(2, 4) == "0011");  // 2 ^ 1 = 3
    CHECK(gray_bits(5, 3) == "111");
    CHECK(gray_bits(3, 3) == "010");
}

TEST_CASE("gray round trip and adjacency, exhaustive for k <= 8") {
    for (int k = 1; k <= 8; ++k) {
        const std::uint32_t n = 1u << k;
        for (std::uint32_t i = 0; i < n; ++i) {
            CHECK(gray_decode(gray_encode(i, k)) == i);
            if (i + 1 < n) {
                const std::uint32_t diff = gray_encode(i, k) ^ gray_encode(i + 1, k);
                CHECK(std::bitset<32>(diff).count() == 1);
            }
        }
    }
}

TEST_CASE("gray domain errors name the field") {
    CHECK_THROWS_WITH_AS(gray_encode(8, 3), doctest::Contains("ordinal"), std::invalid_argument);
    CHECK_THROWS_AS(gray_encode(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(gray_encode(0, 17), std::invalid_argument);
}

TEST_CASE("encode examples") {
    const Code reflect = encode(Mode::Reflect, 0, 0, 4);
    CHECK(reflect.bits().size() == 10);
    CHECK(reflect.bits().substr(0, 2) == "01");

    CHECK(encode(Mode::Off, 0, 0, 1).bits() == "0000");
    CHECK(encode(Mode::Refract, 5, 3, 3).bits() == "10111010");
}

TEST_CASE("encode zeroes the payload of off codes after range checks") {
    CHECK(encode(Mode::Off, 2, 3, 2).bits() == "000000");
    CHECK_THROWS_WITH_AS(encode(Mode::Off, 9, 0, 2), doctest::Contains("phase_ordinal"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(encode(Mode::Reflect, 0, 16, 4), doctest::Contains("coeff_ordinal"),
                         std::invalid_argument);
}

TEST_CASE("decode examples") {
    const Code c = decode("0100001000");
    CHECK(c.mode == Mode::Reflect);
    CHECK(c.k == 4);
    CHECK(c.phase_ordinal == 0);
    CHECK(c.coeff_ordinal == 15);

    const Code off = decode("0000");
    CHECK(off.mode == Mode::Off);
    CHECK(off.k == 1);
    CHECK(off.phase_ordinal == 0);
    CHECK(off.coeff_ordinal == 0);
}

TEST_CASE("decode rejects malformed codes") {
    CHECK_THROWS_AS(decode("000"), std::invalid_argument);
    CHECK_THROWS_AS(decode("00"), std::invalid_argument);
    CHECK_THROWS_AS(decode(""), std::invalid_argument);
    CHECK_THROWS_AS(decode("01020100"), std::invalid_argument);
    CHECK_THROWS_AS(decode(std::string(40, '0')), std::invalid_argument);
}

TEST_CASE("every 10-bit string round trips through decode and serialize") {
    for (std::uint32_t w = 0; w < 1024; ++w) {
        const std::string bits = to_bit_string(w, 10);
        CHECK(decode(bits).bits() == bits);
    }
}

TEST_CASE("code length law for k in [1, 16]") {
    for (int k = 1; k <= 16; ++k) {
        CHECK(encode(Mode::Both, 0, 0, k).bits().size() ==
              static_cast<std::size_t>(2 * (k + 1)));
    }
}

TEST_CASE("enumerate_codes order and size") {
    const auto k1 = enumerate_codes(1);
    CHECK(k1.size() == 16);
    CHECK(k1.front().mode == Mode::Reflect);
    CHECK(k1.front().phase_ordinal == 0);
    CHECK(k1.front().coeff_ordinal == 0);
    CHECK(k1[1].coeff_ordinal == 1);   // coeff ascends fastest
    CHECK(k1[2].phase_ordinal == 1);   // then phase
    CHECK(k1[4].mode == Mode::Refract);
    CHECK(k1[8].mode == Mode::Both);
    CHECK(k1[12].mode == Mode::Off);

    for (int k = 2; k <= 4; ++k) {
        const auto all = enumerate_codes(k);
        CHECK(all.size() == 4u * (1u << (2 * k)));
        std::set<std::string> distinct;
        for (const Code& c : all) distinct.insert(c.bits());
        CHECK(distinct.size() == all.size());
    }
    CHECK_THROWS_AS(enumerate_codes(0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_codes(9), std::invalid_argument);
}

TEST_CASE("bijectivity over the full code space for k <= 5") {
    for (int k = 1; k <= 5; ++k) {
        for (const Code& c : enumerate_codes(k)) {
            CHECK(decode(c.bits()) == c);
        }
        const int len = 2 * (k + 1);
        for (std::uint32_t w = 0; w < (1u << len); ++w) {
            const std::string bits = to_bit_string(w, len);
            REQUIRE(decode(bits).bits() == bits);
        }
    }
}

TEST_CASE("mode partition: every 2-bit prefix maps to exactly one mode") {
    std::set<Mode> seen;
    for (const char* prefix : {"00", "01", "10", "11"}) {
        seen.insert(mode_from_bits(prefix));
        CHECK(mode_bits(mode_from_bits(prefix)) == prefix);
    }
    CHECK(seen.size() == 4);
    CHECK(mode_from_bits("01") == Mode::Reflect);
    CHECK(mode_from_bits("10") == Mode::Refract);
    CHECK(mode_from_bits("11") == Mode::Both);
    CHECK(mode_from_bits("00") == Mode::Off);
}

TEST_CASE("mode names round trip") {
    for (Mode m : {Mode::Off, Mode::Reflect, Mode::Refract, Mode::Both}) {
        CHECK(mode_from_name(mode_name(m)) == m);
    }
    CHECK_THROWS_AS(mode_from_name("mirror"), std::invalid_argument);
}
