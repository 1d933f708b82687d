// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ssi/bigint.hpp"
#include "ssi/zq.hpp"

namespace ssi {

/// Dense element of (Z/qZ)[z]/(z^p - 1). coeffs[j] is the coefficient of z^j;
/// the vector always has length exactly p and entries in [0, q). Values are
/// immutable in spirit: operations return fresh polynomials, so distinct
/// values can be built and consumed on different workers at once.
struct CyclicPoly {
    Modulus m;
    std::vector<std::uint64_t> coeffs;

    CyclicPoly(Modulus mod, std::uint64_t p) : m(mod), coeffs(p, 0) {}

    std::uint64_t ring_degree() const { return coeffs.size(); }

    friend bool operator==(const CyclicPoly& a, const CyclicPoly& b) {
        return a.m == b.m && a.coeffs == b.coeffs;
    }
};

CyclicPoly cyclic_add(const CyclicPoly& a, const CyclicPoly& b);
CyclicPoly cyclic_sub(const CyclicPoly& a, const CyclicPoly& b);

/// Exact cyclic convolution: result coefficient k is
/// sum_{i+j == k (mod p)} a_i * b_j. Schoolbook over the nonzeros of the
/// sparser operand, so sparse-by-dense folds cost O(nnz * p).
CyclicPoly cyclic_mul(const CyclicPoly& a, const CyclicPoly& b);

/// f.coeffs[index] += c (mod q). index must already be reduced mod p.
inline void cyclic_accumulate(CyclicPoly& f, std::uint64_t index, std::uint64_t c) {
    f.coeffs[index] = mod_add(f.coeffs[index], c, f.m);
}

/// Reduces a list of (residue coefficient, big exponent) terms mod (z^p - 1):
/// each term lands at index E mod p, contributions at equal indices add mod q.
/// This is where term collisions happen.
CyclicPoly sparse_to_cyclic(std::span<const std::pair<std::uint64_t, Bigint>> terms,
                            std::uint64_t p, Modulus m);

/// All (coefficient, index) pairs with nonzero coefficient, ascending index.
std::vector<std::pair<std::uint64_t, std::uint64_t>> nonzero_terms(const CyclicPoly& a);

} // namespace ssi
