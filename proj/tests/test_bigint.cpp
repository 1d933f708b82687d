// SPDX-License-Identifier: Apache-2.0
#include "ssi/bigint.hpp"

#include <cstdint>
#include <random>

#include <stdexcept>

#include "doctest.h"

using ssi::Bigint;

TEST_CASE("decimal round trip") {
    for (const char* s : {"0", "1", "-1", "59", "-123456789012345678901234567890",
                          "340282366920938463463374607431768211456"}) {
        CHECK(Bigint::from_string(s).str() == s);
    }
    CHECK_THROWS_AS(Bigint::from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(Bigint::from_string("12x"), std::invalid_argument);
    CHECK_THROWS_AS(Bigint::from_string("-"), std::invalid_argument);
    CHECK_THROWS_AS(Bigint::from_string("1 2"), std::invalid_argument);
}

TEST_CASE("arithmetic agrees with native integers on small values") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const std::int64_t a = static_cast<std::int32_t>(rng());
        const std::int64_t b = static_cast<std::int32_t>(rng());
        CHECK((Bigint{a} + Bigint{b}) == Bigint{a + b});
        CHECK((Bigint{a} - Bigint{b}) == Bigint{a - b});
        CHECK((Bigint{a} * Bigint{b}) == Bigint{a * b});
        CHECK((Bigint{a} < Bigint{b}) == (a < b));
    }
}

TEST_CASE("divmod and mod_u64") {
    Bigint q, r;
    Bigint::divmod(Bigint{59}, Bigint{10}, q, r);
    CHECK(q == Bigint{5});
    CHECK(r == Bigint{9});
    CHECK(Bigint::from_string("123456789123456789").mod_u64(97) ==
          123456789123456789ull % 97);
    CHECK_THROWS_AS(Bigint::divmod(Bigint{1}, Bigint{0}, q, r), std::domain_error);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const std::uint64_t a = rng() >> 1;
        const std::uint64_t b = (rng() >> 40) + 1;
        Bigint::divmod(Bigint{a}, Bigint{b}, q, r);
        CHECK(q == Bigint{a / b});
        CHECK(r == Bigint{a % b});
    }
}

TEST_CASE("quotient-remainder identity holds for random wide values") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        std::vector<std::uint64_t> la{rng(), rng(), rng(), rng()};
        std::vector<std::uint64_t> lb{rng(), rng()};
        const Bigint a = Bigint::from_u64_limbs(la);
        const Bigint b = Bigint::from_u64_limbs(lb) + Bigint{1};
        Bigint q, r;
        Bigint::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r >= Bigint{0});
        CHECK(r < b);
    }
}

TEST_CASE("pow, pow2, bits") {
    CHECK(Bigint::pow(Bigint{10}, 0) == Bigint{1});
    CHECK(Bigint::pow(Bigint{10}, 2) == Bigint{100});
    CHECK(Bigint::pow(Bigint{2}, 100) == Bigint::pow2(100));
    CHECK(Bigint::pow2(62).str() == "4611686018427387904");

    const Bigint x = Bigint::from_string("1025");
    CHECK(x.bit_length() == 11);
    CHECK(x.bit(0));
    CHECK_FALSE(x.bit(1));
    CHECK(x.bit(10));
    CHECK(Bigint{0}.bit_length() == 0);
}

TEST_CASE("log2 is exact on powers of two and monotone nearby") {
    CHECK(Bigint::pow2(30).log2() == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(Bigint{40}.log2() == doctest::Approx(5.321928094887363).epsilon(1e-12));
    CHECK((Bigint::pow2(100) + Bigint{1}).log2() >= 100.0);
    CHECK((Bigint::pow2(20) + Bigint{1}).log2() > 20.0);
    CHECK((Bigint::pow2(20) - Bigint{1}).log2() < 20.0);
    CHECK_THROWS_AS(Bigint{0}.log2(), std::domain_error);
}

TEST_CASE("u64 conversions guard their range") {
    CHECK(Bigint{std::uint64_t{0xffffffffffffffffull}}.to_u64() == 0xffffffffffffffffull);
    CHECK_THROWS_AS(Bigint{-1}.to_u64(), std::overflow_error);
    CHECK_THROWS_AS((Bigint::pow2(64)).to_u64(), std::overflow_error);
    CHECK(Bigint{-5}.to_i64() == -5);
}

TEST_CASE("limb import is little-endian") {
    std::vector<std::uint64_t> limbs{1, 1};
    CHECK(Bigint::from_u64_limbs(limbs) == Bigint::pow2(64) + Bigint{1});
}
