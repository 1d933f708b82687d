// SPDX-License-Identifier: Apache-2.0
#include "ssi/cyclic.hpp"

#include <random>

#include <stdexcept>

#include "doctest.h"
#include "ssi/bigint.hpp"
#include "ssi/prime_gen.hpp"

using ssi::Bigint;
using ssi::CyclicPoly;
using ssi::Modulus;

namespace {

// Brute-force double-loop convolution: the independent oracle.
CyclicPoly conv_oracle(const CyclicPoly& a, const CyclicPoly& b) {
    const std::size_t p = a.ring_degree();
    CyclicPoly r(a.m, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            const std::size_t k = (i + j) % p;
            const std::uint64_t prod = a.coeffs[i] * b.coeffs[j] % a.m.q;
            r.coeffs[k] = (r.coeffs[k] + prod) % a.m.q;
        }
    return r;
}

CyclicPoly random_poly(Modulus m, std::size_t p, std::mt19937_64& rng, int fill_percent = 100) {
    CyclicPoly f(m, p);
    for (auto& c : f.coeffs)
        if (rng() % 100 < static_cast<std::uint64_t>(fill_percent)) c = rng() % m.q;
    return f;
}

CyclicPoly one(Modulus m, std::size_t p) {
    CyclicPoly f(m, p);
    f.coeffs[0] = 1;
    return f;
}

} // namespace

TEST_CASE("cyclic_add basics") {
    Modulus m{5};
    CyclicPoly a(m, 2);
    a.coeffs = {1, 3}; // 3z + 1
    CyclicPoly b(m, 2);
    b.coeffs = {2, 4}; // 4z + 2
    const CyclicPoly sum = cyclic_add(a, b);
    CHECK(sum.coeffs == std::vector<std::uint64_t>{3, 2}); // 2z + 3

    const CyclicPoly z(m, 2);
    CHECK(cyclic_add(a, z) == a);
    CHECK(cyclic_add(a, cyclic_sub(z, a)) == z); // a + (-a) = 0
}

TEST_CASE("dimension mismatches are rejected") {
    Modulus m{5};
    CyclicPoly a(m, 2), b(m, 3), c(Modulus{7}, 2);
    CHECK_THROWS_AS(cyclic_add(a, b), std::invalid_argument);
    CHECK_THROWS_AS(cyclic_mul(a, c), std::invalid_argument);
}

TEST_CASE("cyclic_mul identities") {
    Modulus m{5};
    std::mt19937_64 rng(31);
    CyclicPoly a = random_poly(m, 6, rng);
    CHECK(cyclic_mul(a, one(m, 6)) == a);

    // z^(p-1) * z = 1
    CyclicPoly zp1(m, 6), z1(m, 6);
    zp1.coeffs[5] = 1;
    z1.coeffs[1] = 1;
    CHECK(cyclic_mul(zp1, z1) == one(m, 6));

    // (z+1)^2 with p=2: z^2 folds to 1, so 2z + 2.
    CyclicPoly zp(m, 2);
    zp.coeffs = {1, 1};
    CHECK(cyclic_mul(zp, zp).coeffs == std::vector<std::uint64_t>{2, 2});
}

TEST_CASE("cyclic_mul agrees with the brute-force oracle") {
    std::mt19937_64 rng(32);
    const std::uint64_t qs[] = {5, 7, 17, 31, 97};
    for (int trial = 0; trial < 1000; ++trial) {
        Modulus m{qs[rng() % 5]};
        const std::size_t p = 1 + rng() % 32;
        // Mix densities so both the sparse and the dense path get exercised.
        const int fill = trial % 3 == 0 ? 15 : 100;
        const CyclicPoly a = random_poly(m, p, rng, fill);
        const CyclicPoly b = random_poly(m, p, rng);
        CHECK(cyclic_mul(a, b) == conv_oracle(a, b));
    }
}

TEST_CASE("cyclic_mul is commutative and associative") {
    std::mt19937_64 rng(33);
    Modulus m{97};
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t p = 1 + rng() % 16;
        const CyclicPoly a = random_poly(m, p, rng);
        const CyclicPoly b = random_poly(m, p, rng, 40);
        const CyclicPoly c = random_poly(m, p, rng);
        CHECK(cyclic_mul(a, b) == cyclic_mul(b, a));
        CHECK(cyclic_mul(cyclic_mul(a, b), c) == cyclic_mul(a, cyclic_mul(b, c)));
    }
}

TEST_CASE("results are always reduced into [0, q)") {
    std::mt19937_64 rng(34);
    Modulus m{61};
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t p = 1 + rng() % 24;
        const CyclicPoly r = cyclic_mul(random_poly(m, p, rng), random_poly(m, p, rng));
        for (auto c : r.coeffs) CHECK(c < m.q);
    }
}

TEST_CASE("sparse_to_cyclic reproduces the worked reductions") {
    Modulus m{101};
    // f(z) = 3 z^20 + 2 z^43 + 7 z^59
    const std::vector<std::pair<std::uint64_t, Bigint>> terms = {
        {3, Bigint{20}}, {2, Bigint{43}}, {7, Bigint{59}}};

    const CyclicPoly f17 = sparse_to_cyclic(terms, 17, m);
    CHECK(nonzero_terms(f17) ==
          std::vector<std::pair<std::uint64_t, std::uint64_t>>{{3, 3}, {7, 8}, {2, 9}});

    // 20 and 59 collide mod 13: 3 + 7 = 10 at index 7.
    const CyclicPoly f13 = sparse_to_cyclic(terms, 13, m);
    CHECK(nonzero_terms(f13) ==
          std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 4}, {10, 7}});

    const CyclicPoly f7 = sparse_to_cyclic(terms, 7, m);
    CHECK(nonzero_terms(f7) ==
          std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 1}, {7, 3}, {3, 6}});
}

TEST_CASE("sparse_to_cyclic then mul equals sparse-multiply then reduce") {
    std::mt19937_64 rng(35);
    Modulus m{97};
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t p = 2 + rng() % 24;
        // Random sparse exponent lists with big exponents.
        auto random_terms = [&](std::size_t count) {
            std::vector<std::pair<std::uint64_t, Bigint>> ts;
            for (std::size_t i = 0; i < count; ++i)
                ts.emplace_back(1 + rng() % (m.q - 1),
                                Bigint{rng() % 1000000} * Bigint{rng() % 1000000});
            return ts;
        };
        const auto u = random_terms(1 + rng() % 4);
        const auto v = random_terms(1 + rng() % 4);
        // Product of the two sparse polynomials, term by term.
        std::vector<std::pair<std::uint64_t, Bigint>> uv;
        for (const auto& [cu, eu] : u)
            for (const auto& [cv, ev] : v) uv.emplace_back(cu * cv % m.q, eu + ev);
        CHECK(cyclic_mul(sparse_to_cyclic(u, p, m), sparse_to_cyclic(v, p, m)) ==
              sparse_to_cyclic(uv, p, m));
    }
}

TEST_CASE("nonzero_terms edge cases") {
    Modulus m{11};
    CHECK(nonzero_terms(CyclicPoly(m, 4)).empty());
    CyclicPoly c(m, 4);
    c.coeffs[0] = 5;
    CHECK(nonzero_terms(c) ==
          std::vector<std::pair<std::uint64_t, std::uint64_t>>{{5, 0}});
}
