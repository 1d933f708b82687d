// SPDX-License-Identifier: Apache-2.0
#include "ssi/zq.hpp"

#include <stdexcept>

#include "ssi/prime_gen.hpp"

namespace ssi {

Modulus::Modulus(std::uint64_t q_) : q(q_) {
    if (q <= 2 || q >= (std::uint64_t{1} << 62))
        throw std::invalid_argument("modulus must satisfy 2 < q < 2^62");
    if (!is_prime(q)) throw std::invalid_argument("modulus is not prime");
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, Modulus m) {
    std::uint64_t r = 1;
    std::uint64_t b = base % m.q;
    while (exp) {
        if (exp & 1) r = mod_mul(r, b, m);
        b = mod_mul(b, b, m);
        exp >>= 1;
    }
    return r;
}

std::uint64_t mod_pow(std::uint64_t base, const Bigint& exp, Modulus m) {
    if (exp.sign() < 0) throw std::domain_error("mod_pow: negative exponent");
    std::uint64_t r = 1;
    std::uint64_t b = base % m.q;
    const std::size_t bits = exp.bit_length();
    for (std::size_t i = 0; i < bits; ++i) {
        if (exp.bit(i)) r = mod_mul(r, b, m);
        b = mod_mul(b, b, m);
    }
    return r;
}

std::uint64_t mod_inv(std::uint64_t a, Modulus m) {
    a %= m.q;
    if (a == 0) throw std::domain_error("mod_inv of zero");
    return mod_pow(a, m.q - 2, m); // Fermat; q prime
}

std::int64_t signed_lift(std::uint64_t a, Modulus m) {
    a %= m.q;
    if (a <= (m.q - 1) / 2) return static_cast<std::int64_t>(a);
    return static_cast<std::int64_t>(a) - static_cast<std::int64_t>(m.q);
}

std::uint64_t reduce_signed(const Bigint& c, Modulus m) {
    std::uint64_t r = c.abs().mod_u64(m.q);
    if (c.sign() < 0 && r != 0) r = m.q - r;
    return r;
}

} // namespace ssi
