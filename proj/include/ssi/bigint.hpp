// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

namespace ssi {

/// Arbitrary-precision signed integer, a thin RAII wrapper over GMP's mpz_t
/// exposing only what this project needs. Exponents and Kronecker codes are
/// non-negative Bigints; callers enforce sign preconditions.
class Bigint {
public:
    Bigint() { mpz_init(v_); }
    Bigint(std::int64_t x) { mpz_init_set_si(v_, x); }
    Bigint(std::uint64_t x) { mpz_init_set_ui(v_, x); }
    Bigint(int x) : Bigint(static_cast<std::int64_t>(x)) {}

    Bigint(const Bigint& o) { mpz_init_set(v_, o.v_); }
    Bigint(Bigint&& o) noexcept {
        mpz_init(v_);
        mpz_swap(v_, o.v_);
    }
    Bigint& operator=(const Bigint& o) {
        if (this != &o) mpz_set(v_, o.v_);
        return *this;
    }
    Bigint& operator=(Bigint&& o) noexcept {
        mpz_swap(v_, o.v_);
        return *this;
    }
    ~Bigint() { mpz_clear(v_); }

    /// Parses a decimal integer with optional leading '-'. Throws
    /// std::invalid_argument on malformed input.
    static Bigint from_string(const std::string& s);
    std::string str() const;

    static Bigint pow(const Bigint& base, unsigned long exp) {
        Bigint r;
        mpz_pow_ui(r.v_, base.v_, exp);
        return r;
    }
    static Bigint pow2(unsigned bits) {
        Bigint r{1};
        mpz_mul_2exp(r.v_, r.v_, bits);
        return r;
    }
    /// Builds a non-negative value from 64-bit limbs, least significant first.
    static Bigint from_u64_limbs(std::span<const std::uint64_t> limbs);

    int sign() const { return mpz_sgn(v_); }
    bool is_zero() const { return mpz_sgn(v_) == 0; }

    bool fits_u64() const { return mpz_sgn(v_) >= 0 && mpz_fits_ulong_p(v_); }
    std::uint64_t to_u64() const;
    std::int64_t to_i64() const;

    /// Number of bits in the binary representation of |x|; 0 for x = 0.
    std::size_t bit_length() const {
        return is_zero() ? 0 : mpz_sizeinbase(v_, 2);
    }
    bool bit(std::size_t i) const { return mpz_tstbit(v_, i) != 0; }

    /// log2 of a positive value, accurate to double precision (exact for
    /// powers of two).
    double log2() const;

    /// Truncated division, remainder has the sign of the dividend. Callers in
    /// this project only divide non-negative values.
    static void divmod(const Bigint& a, const Bigint& b, Bigint& q, Bigint& r);
    /// a mod m for a >= 0 and m > 0.
    std::uint64_t mod_u64(std::uint64_t m) const;

    Bigint& operator+=(const Bigint& o) {
        mpz_add(v_, v_, o.v_);
        return *this;
    }
    Bigint& operator-=(const Bigint& o) {
        mpz_sub(v_, v_, o.v_);
        return *this;
    }
    Bigint& operator*=(const Bigint& o) {
        mpz_mul(v_, v_, o.v_);
        return *this;
    }
    friend Bigint operator+(Bigint a, const Bigint& b) { return a += b; }
    friend Bigint operator-(Bigint a, const Bigint& b) { return a -= b; }
    friend Bigint operator*(Bigint a, const Bigint& b) { return a *= b; }
    Bigint operator-() const {
        Bigint r(*this);
        mpz_neg(r.v_, r.v_);
        return r;
    }
    Bigint abs() const {
        Bigint r(*this);
        mpz_abs(r.v_, r.v_);
        return r;
    }

    friend bool operator==(const Bigint& a, const Bigint& b) {
        return mpz_cmp(a.v_, b.v_) == 0;
    }
    friend bool operator!=(const Bigint& a, const Bigint& b) {
        return mpz_cmp(a.v_, b.v_) != 0;
    }
    friend bool operator<(const Bigint& a, const Bigint& b) {
        return mpz_cmp(a.v_, b.v_) < 0;
    }
    friend bool operator<=(const Bigint& a, const Bigint& b) {
        return mpz_cmp(a.v_, b.v_) <= 0;
    }
    friend bool operator>(const Bigint& a, const Bigint& b) {
        return mpz_cmp(a.v_, b.v_) > 0;
    }
    friend bool operator>=(const Bigint& a, const Bigint& b) {
        return mpz_cmp(a.v_, b.v_) >= 0;
    }

    mpz_srcptr raw() const { return v_; }

private:
    mpz_t v_;
};

std::ostream& operator<<(std::ostream& os, const Bigint& x);

} // namespace ssi
