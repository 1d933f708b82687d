// SPDX-License-Identifier: Apache-2.0
#include "ssi/bigint.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace ssi {

Bigint Bigint::from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("bare sign in integer literal");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("bad integer literal: " + s);
    }
    Bigint r;
    if (mpz_set_str(r.v_, s.c_str(), 10) != 0)
        throw std::invalid_argument("bad integer literal: " + s);
    return r;
}

std::string Bigint::str() const {
    std::string buf(mpz_sizeinbase(v_, 10) + 2, '\0');
    mpz_get_str(buf.data(), 10, v_);
    buf.resize(buf.find('\0'));
    return buf;
}

Bigint Bigint::from_u64_limbs(std::span<const std::uint64_t> limbs) {
    Bigint r;
    if (!limbs.empty())
        mpz_import(r.v_, limbs.size(), -1 /* LS word first */, sizeof(std::uint64_t),
                   0 /* native endian */, 0, limbs.data());
    return r;
}

std::uint64_t Bigint::to_u64() const {
    if (!fits_u64()) throw std::overflow_error("Bigint does not fit uint64");
    return mpz_get_ui(v_);
}

std::int64_t Bigint::to_i64() const {
    if (!mpz_fits_slong_p(v_)) throw std::overflow_error("Bigint does not fit int64");
    return mpz_get_si(v_);
}

double Bigint::log2() const {
    if (sign() <= 0) throw std::domain_error("log2 of non-positive value");
    long exp = 0;
    double d = mpz_get_d_2exp(&exp, v_); // |d| in [0.5, 1)
    return std::log2(d) + static_cast<double>(exp);
}

void Bigint::divmod(const Bigint& a, const Bigint& b, Bigint& q, Bigint& r) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    mpz_tdiv_qr(q.v_, r.v_, a.v_, b.v_);
}

std::uint64_t Bigint::mod_u64(std::uint64_t m) const {
    if (m == 0) throw std::domain_error("division by zero");
    if (sign() < 0) throw std::domain_error("mod_u64 of negative value");
    return mpz_tdiv_ui(v_, m);
}

std::ostream& operator<<(std::ostream& os, const Bigint& x) { return os << x.str(); }

} // namespace ssi
