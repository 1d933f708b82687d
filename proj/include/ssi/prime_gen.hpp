// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "ssi/bigint.hpp"

namespace ssi {

struct NoPrimeError : std::runtime_error {
    NoPrimeError(std::uint64_t lo, std::uint64_t hi);
    std::uint64_t lo, hi;
};

struct InsufficientPrimesError : std::runtime_error {
    InsufficientPrimesError(std::uint64_t lo, std::uint64_t hi, std::size_t requested,
                            std::size_t available);
    std::uint64_t lo, hi;
    std::size_t requested;
    std::size_t available;
};

/// Seedable deterministic randomness source. All sampling helpers avoid
/// std::uniform_int_distribution so the draw sequence is identical across
/// platforms and standard-library implementations.
class PrimeSampler {
public:
    explicit PrimeSampler(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next_u64() { return rng_(); }

    /// Uniform in [lo, hi], inclusive, by masked rejection.
    std::uint64_t uniform_u64(std::uint64_t lo, std::uint64_t hi);

    /// Uniform in [0, bound), bound >= 1, by limb-masked rejection.
    Bigint uniform_below(const Bigint& bound);

private:
    std::mt19937_64 rng_;
};

/// Deterministic for all 64-bit inputs (fixed Miller-Rabin witness set).
bool is_prime(std::uint64_t x);
/// Delegates to the deterministic test below 2^64; above that, probabilistic
/// with error < 2^-80.
bool is_prime(const Bigint& x);

/// A prime drawn uniformly-ish from [lo, hi] by rejection sampling; narrow
/// ranges fall back to exhaustive enumeration so a primeless interval raises
/// NoPrimeError.
std::uint64_t random_prime(std::uint64_t lo, std::uint64_t hi, PrimeSampler& sampler);

/// `count` pairwise-distinct primes from [lo, hi], order randomized by the
/// sampler. Raises InsufficientPrimesError (with the available count) when the
/// interval holds fewer than `count` primes.
std::vector<std::uint64_t> distinct_primes(std::uint64_t lo, std::uint64_t hi,
                                           std::size_t count, PrimeSampler& sampler);

} // namespace ssi
