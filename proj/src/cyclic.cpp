// SPDX-License-Identifier: Apache-2.0
#include "ssi/cyclic.hpp"

#include <stdexcept>

namespace ssi {

namespace {

void check_compatible(const CyclicPoly& a, const CyclicPoly& b) {
    if (a.ring_degree() != b.ring_degree())
        throw std::invalid_argument("cyclic ring degree mismatch");
    if (a.m != b.m) throw std::invalid_argument("cyclic coefficient modulus mismatch");
}

std::size_t count_nonzero(const CyclicPoly& a) {
    std::size_t n = 0;
    for (auto c : a.coeffs) n += (c != 0);
    return n;
}

} // namespace

CyclicPoly cyclic_add(const CyclicPoly& a, const CyclicPoly& b) {
    check_compatible(a, b);
    CyclicPoly r(a.m, a.ring_degree());
    for (std::size_t j = 0; j < r.coeffs.size(); ++j)
        r.coeffs[j] = mod_add(a.coeffs[j], b.coeffs[j], a.m);
    return r;
}

CyclicPoly cyclic_sub(const CyclicPoly& a, const CyclicPoly& b) {
    check_compatible(a, b);
    CyclicPoly r(a.m, a.ring_degree());
    for (std::size_t j = 0; j < r.coeffs.size(); ++j)
        r.coeffs[j] = mod_sub(a.coeffs[j], b.coeffs[j], a.m);
    return r;
}

CyclicPoly cyclic_mul(const CyclicPoly& a, const CyclicPoly& b) {
    check_compatible(a, b);
    const CyclicPoly& s = count_nonzero(a) <= count_nonzero(b) ? a : b;
    const CyclicPoly& d = (&s == &a) ? b : a;
    const std::size_t p = a.ring_degree();
    CyclicPoly r(a.m, p);

    std::vector<std::pair<std::size_t, std::uint64_t>> nz;
    for (std::size_t i = 0; i < p; ++i)
        if (s.coeffs[i] != 0) nz.emplace_back(i, s.coeffs[i]);
    if (nz.empty()) return r;

    // Gather per output cell with a double-width accumulator, reducing only
    // when another product could overflow: each product is < 2^124 since
    // q < 2^62, so 15 fit alongside a reduced carry.
    constexpr unsigned kBatch = 15;
    for (std::size_t k = 0; k < p; ++k) {
        unsigned __int128 acc = 0;
        unsigned pending = 0;
        for (const auto& [i, si] : nz) {
            const std::size_t j = k >= i ? k - i : k + p - i;
            acc += static_cast<unsigned __int128>(si) * d.coeffs[j];
            if (++pending == kBatch) {
                acc %= a.m.q;
                pending = 0;
            }
        }
        r.coeffs[k] = static_cast<std::uint64_t>(acc % a.m.q);
    }
    return r;
}

CyclicPoly sparse_to_cyclic(std::span<const std::pair<std::uint64_t, Bigint>> terms,
                            std::uint64_t p, Modulus m) {
    CyclicPoly r(m, p);
    for (const auto& [c, e] : terms) {
        if (e.sign() < 0) throw std::domain_error("sparse_to_cyclic: negative exponent");
        cyclic_accumulate(r, e.mod_u64(p), c % m.q);
    }
    return r;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> nonzero_terms(const CyclicPoly& a) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (std::size_t j = 0; j < a.coeffs.size(); ++j)
        if (a.coeffs[j] != 0) out.emplace_back(a.coeffs[j], j);
    return out;
}

} // namespace ssi
