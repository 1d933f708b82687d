// SPDX-License-Identifier: Apache-2.0
#include "ssi/zq.hpp"

#include <random>

#include <stdexcept>

#include "doctest.h"
#include "ssi/bigint.hpp"
#include "ssi/prime_gen.hpp"

using ssi::Bigint;
using ssi::Modulus;

namespace {

// Independent oracle: multiply as big integers, then reduce.
std::uint64_t mul_oracle(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return (Bigint{a} * Bigint{b}).mod_u64(q);
}

// Independent oracle: repeated multiplication.
std::uint64_t pow_oracle(std::uint64_t b, std::uint64_t e, Modulus m) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = ssi::mod_mul(r, b, m);
    return r;
}

std::uint64_t random_prime_u64(std::mt19937_64& rng, int bits) {
    for (;;) {
        std::uint64_t x = (rng() | 1) & ((std::uint64_t{1} << bits) - 1);
        if (x > 2 && ssi::is_prime(x)) return x;
    }
}

} // namespace

TEST_CASE("modulus construction validates range and primality") {
    CHECK_NOTHROW(Modulus{101});
    CHECK_THROWS_AS(Modulus{100}, std::invalid_argument);
    CHECK_THROWS_AS(Modulus{2}, std::invalid_argument);
    CHECK_THROWS_AS(Modulus{std::uint64_t{1} << 62}, std::invalid_argument);
}

TEST_CASE("mod_mul basics") {
    Modulus m{101};
    CHECK(ssi::mod_mul(1, 57, m) == 57);
    CHECK(ssi::mod_mul(100, 100, m) == 1); // (-1)(-1)
    CHECK(ssi::mod_mul(57, 88, m) == 67);  // 5016 mod 101
}

TEST_CASE("mod_mul agrees with the big-integer oracle") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t q = random_prime_u64(rng, 61 - (i % 30));
        Modulus m{q};
        const std::uint64_t a = rng() % q;
        const std::uint64_t b = rng() % q;
        CHECK(ssi::mod_mul(a, b, m) == mul_oracle(a, b, q));
    }
}

TEST_CASE("mod_pow basics and big exponents") {
    Modulus m{101};
    CHECK(ssi::mod_pow(7, Bigint{0}, m) == 1);
    CHECK(ssi::mod_pow(1, Bigint::pow2(200), m) == 1);
    CHECK(ssi::mod_pow(2, Bigint{10}, m) == 14); // 1024 mod 101
    CHECK(ssi::mod_pow(2, std::uint64_t{10}, m) == 14);

    // Fermat: a^(q-1) = 1, so a^(2^200) = a^(2^200 mod (q-1)).
    const Bigint huge = Bigint::pow2(200);
    const std::uint64_t reduced = huge.mod_u64(m.q - 1);
    for (std::uint64_t a : {2ull, 3ull, 99ull})
        CHECK(ssi::mod_pow(a, huge, m) == ssi::mod_pow(a, reduced, m));
}

TEST_CASE("mod_pow agrees with the repeated-multiplication oracle") {
    std::mt19937_64 rng(22);
    Modulus m{104729};
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t b = rng() % m.q;
        const std::uint64_t e = rng() % 64;
        CHECK(ssi::mod_pow(b, e, m) == pow_oracle(b, e, m));
        CHECK(ssi::mod_pow(b, Bigint{e}, m) == pow_oracle(b, e, m));
    }
}

TEST_CASE("mod_pow is a homomorphism in the exponent") {
    std::mt19937_64 rng(23);
    Modulus m{2305843009213693951ull}; // 2^61 - 1
    for (int i = 0; i < 200; ++i) {
        std::vector<std::uint64_t> l1{rng(), rng()}, l2{rng(), rng(), rng()};
        const Bigint e1 = Bigint::from_u64_limbs(l1);
        const Bigint e2 = Bigint::from_u64_limbs(l2);
        const std::uint64_t b = rng() % m.q;
        CHECK(ssi::mod_pow(b, e1 + e2, m) ==
              ssi::mod_mul(ssi::mod_pow(b, e1, m), ssi::mod_pow(b, e2, m), m));
    }
}

TEST_CASE("mod_inv") {
    CHECK(ssi::mod_inv(1, Modulus{101}) == 1);
    CHECK(ssi::mod_inv(2, Modulus{7}) == 4); // exhaustive: 2*4 = 8 = 1 mod 7
    CHECK_THROWS_AS(ssi::mod_inv(0, Modulus{101}), std::domain_error);

    // Exhaustive oracle mod 7.
    for (std::uint64_t a = 1; a < 7; ++a) {
        std::uint64_t found = 0;
        for (std::uint64_t b = 1; b < 7; ++b)
            if (a * b % 7 == 1) found = b;
        CHECK(ssi::mod_inv(a, Modulus{7}) == found);
    }

    std::mt19937_64 rng(24);
    Modulus m{1000003};
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t a = rng() % (m.q - 1) + 1;
        CHECK(ssi::mod_mul(a, ssi::mod_inv(a, m), m) == 1);
    }
}

TEST_CASE("signed_lift") {
    Modulus m{101};
    CHECK(ssi::signed_lift(0, m) == 0);
    CHECK(ssi::signed_lift(100, m) == -1);
    CHECK(ssi::signed_lift(7, m) == 7);
    CHECK(ssi::signed_lift(50, m) == 50);
    CHECK(ssi::signed_lift(51, m) == -50);

    std::mt19937_64 rng(25);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t a = rng() % m.q;
        const std::int64_t s = ssi::signed_lift(a, m);
        CHECK(((s % 101) + 101) % 101 == static_cast<std::int64_t>(a));
        CHECK(2 * (s < 0 ? -s : s) <= 101);
    }
}

TEST_CASE("reduce_signed lifts negatives") {
    Modulus m{101};
    CHECK(ssi::reduce_signed(Bigint{-1}, m) == 100);
    CHECK(ssi::reduce_signed(Bigint{0}, m) == 0);
    CHECK(ssi::reduce_signed(Bigint{202}, m) == 0);
    CHECK(ssi::reduce_signed(Bigint{-305}, m) == 99);
    CHECK(ssi::reduce_signed(Bigint::from_string("-123456789012345678901"), m) ==
          (101 - Bigint::from_string("123456789012345678901").mod_u64(101)) % 101);
}
