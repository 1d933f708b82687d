// SPDX-License-Identifier: Apache-2.0
#include "ssi/prime_gen.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_set>

namespace ssi {

NoPrimeError::NoPrimeError(std::uint64_t lo_, std::uint64_t hi_)
    : std::runtime_error("no prime in [" + std::to_string(lo_) + ", " + std::to_string(hi_) +
                         "]"),
      lo(lo_),
      hi(hi_) {}

InsufficientPrimesError::InsufficientPrimesError(std::uint64_t lo_, std::uint64_t hi_,
                                                 std::size_t requested_, std::size_t available_)
    : std::runtime_error("only " + std::to_string(available_) + " primes in [" +
                         std::to_string(lo_) + ", " + std::to_string(hi_) + "], need " +
                         std::to_string(requested_)),
      lo(lo_),
      hi(hi_),
      requested(requested_),
      available(available_) {}

std::uint64_t PrimeSampler::uniform_u64(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_u64: empty range");
    if (lo == hi) return lo;
    const std::uint64_t span = hi - lo; // draws from [0, span]
    std::uint64_t mask = ~std::uint64_t{0};
    if (span < (std::uint64_t{1} << 63)) mask = std::bit_ceil(span + 1) - 1;
    for (;;) {
        std::uint64_t x = rng_() & mask;
        if (x <= span) return lo + x;
    }
}

Bigint PrimeSampler::uniform_below(const Bigint& bound) {
    if (bound.sign() <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
    const std::size_t bits = bound.bit_length();
    const std::size_t nlimbs = (bits + 63) / 64;
    const unsigned top = static_cast<unsigned>(bits - 64 * (nlimbs - 1));
    const std::uint64_t top_mask =
        top == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top) - 1);
    std::vector<std::uint64_t> limbs(nlimbs);
    for (;;) {
        for (auto& l : limbs) l = rng_();
        limbs.back() &= top_mask;
        Bigint x = Bigint::from_u64_limbs(limbs);
        if (x < bound) return x;
    }
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return r;
}

// Strong pseudoprime test to base a; n odd, n - 1 = d * 2^s.
bool mr_witness(std::uint64_t n, std::uint64_t d, int s, std::uint64_t a) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace

bool is_prime(std::uint64_t x) {
    if (x < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull}) {
        if (x == p) return true;
        if (x % p == 0) return false;
    }
    std::uint64_t d = x - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is deterministic for all n < 3.3e24, covering uint64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull}) {
        if (!mr_witness(x, d, s, a)) return false;
    }
    return true;
}

bool is_prime(const Bigint& x) {
    if (x.sign() < 0) throw std::invalid_argument("is_prime: negative input");
    if (x.fits_u64()) return is_prime(x.to_u64());
    // 40 Miller-Rabin rounds: error < 4^-40 = 2^-80.
    return mpz_probab_prime_p(x.raw(), 40) > 0;
}

namespace {

constexpr std::uint64_t kEnumerableWidth = 4'000'000;

std::vector<std::uint64_t> enumerate_primes(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = lo;; ++x) {
        if (is_prime(x)) out.push_back(x);
        if (x == hi) break;
    }
    return out;
}

} // namespace

std::uint64_t random_prime(std::uint64_t lo, std::uint64_t hi, PrimeSampler& sampler) {
    if (lo > hi) throw std::invalid_argument("random_prime: empty range");
    const std::uint64_t width = hi - lo + 1;
    if (width != 0 && width <= 4096) {
        auto primes = enumerate_primes(lo, hi);
        if (primes.empty()) throw NoPrimeError(lo, hi);
        return primes[sampler.uniform_u64(0, primes.size() - 1)];
    }
    for (int attempt = 0; attempt < 65536; ++attempt) {
        std::uint64_t x = sampler.uniform_u64(lo, hi);
        if (is_prime(x)) return x;
    }
    if (width != 0 && width <= kEnumerableWidth) {
        auto primes = enumerate_primes(lo, hi);
        if (primes.empty()) throw NoPrimeError(lo, hi);
        return primes[sampler.uniform_u64(0, primes.size() - 1)];
    }
    throw std::runtime_error("random_prime: sampling stalled on a wide range");
}

std::vector<std::uint64_t> distinct_primes(std::uint64_t lo, std::uint64_t hi,
                                           std::size_t count, PrimeSampler& sampler) {
    if (count == 0) throw std::invalid_argument("distinct_primes: count must be >= 1");
    if (lo > hi) throw std::invalid_argument("distinct_primes: empty range");
    const std::uint64_t width = hi - lo + 1;

    auto finish_by_enumeration = [&](std::vector<std::uint64_t> have) {
        auto all = enumerate_primes(lo, hi);
        if (all.size() < count) throw InsufficientPrimesError(lo, hi, count, all.size());
        std::unordered_set<std::uint64_t> seen(have.begin(), have.end());
        std::vector<std::uint64_t> rest;
        for (auto p : all)
            if (!seen.count(p)) rest.push_back(p);
        // Fisher-Yates on the remainder keeps the order sampler-driven.
        for (std::size_t i = rest.size(); i > 1; --i)
            std::swap(rest[i - 1], rest[sampler.uniform_u64(0, i - 1)]);
        for (std::size_t i = 0; have.size() < count; ++i) have.push_back(rest[i]);
        return have;
    };

    if (width != 0 && width <= 4096) return finish_by_enumeration({});

    std::vector<std::uint64_t> out;
    std::unordered_set<std::uint64_t> seen;
    const std::size_t cap = 64 * count + 512;
    for (std::size_t attempt = 0; attempt < cap && out.size() < count; ++attempt) {
        std::uint64_t x = sampler.uniform_u64(lo, hi);
        if (seen.count(x) || !is_prime(x)) continue;
        seen.insert(x);
        out.push_back(x);
    }
    if (out.size() == count) return out;
    if (width != 0 && width <= kEnumerableWidth) return finish_by_enumeration(std::move(out));
    throw std::runtime_error("distinct_primes: sampling stalled on a wide range");
}

} // namespace ssi
