// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "ssi/bigint.hpp"

namespace ssi {

/// Word-size prime coefficient field Z/qZ. The bound q < 2^62 keeps every
/// product inside a 128-bit intermediate. Residues are plain uint64_t values
/// in [0, q).
struct Modulus {
    std::uint64_t q;

    /// Validates 2 < q < 2^62 and primality.
    explicit Modulus(std::uint64_t q);

    friend bool operator==(Modulus a, Modulus b) { return a.q == b.q; }
    friend bool operator!=(Modulus a, Modulus b) { return a.q != b.q; }
};

inline std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, Modulus m) {
    std::uint64_t s = a + b; // no overflow: both < 2^62
    return s >= m.q ? s - m.q : s;
}

inline std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, Modulus m) {
    return a >= b ? a - b : a + m.q - b;
}

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, Modulus m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m.q);
}

/// Modular product with an arbitrary (not necessarily prime) modulus; used
/// for index arithmetic mod the ring degree p.
inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % mod);
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, Modulus m);

/// Square-and-multiply with an arbitrary-precision exponent; Kronecker
/// exponents reach D^n, far past word size.
std::uint64_t mod_pow(std::uint64_t base, const Bigint& exp, Modulus m);

/// Inverse of a nonzero residue. Throws std::domain_error on zero; a zero here
/// signals a logic fault, since alpha is drawn from the unit group.
std::uint64_t mod_inv(std::uint64_t a, Modulus m);

/// The representative of a in [-q/2, q/2]; unique since q is odd.
std::int64_t signed_lift(std::uint64_t a, Modulus m);

/// Reduces a signed big integer into [0, q).
std::uint64_t reduce_signed(const Bigint& c, Modulus m);

} // namespace ssi
