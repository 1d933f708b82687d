// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ssi/bigint.hpp"
#include "ssi/prime_gen.hpp"

namespace ssi {

struct Term {
    Bigint coeff;              // nonzero
    std::vector<Bigint> exps;  // length n, each in [0, D)
};

/// Sparse multivariate integer polynomial with a uniform per-variable degree
/// bound D. Canonical form: no zero coefficients, pairwise-distinct exponent
/// vectors, terms ascending by Kronecker code. Immutable once built, so values
/// are freely shared across workers.
class SparsePoly {
public:
    /// The zero polynomial.
    SparsePoly(std::size_t nvars, Bigint degree_bound);

    /// Canonicalizes: merges duplicate exponent vectors (summing
    /// coefficients), drops zeros, sorts ascending by Kronecker code.
    /// Validates 0 <= e_j < D. Idempotent on canonical input.
    static SparsePoly from_terms(std::size_t nvars, Bigint degree_bound,
                                 std::vector<Term> terms);

    std::size_t nvars() const { return nvars_; }
    const Bigint& degree_bound() const { return degree_bound_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b);

private:
    std::size_t nvars_;
    Bigint degree_bound_;
    std::vector<Term> terms_;
};

/// Kronecker code E = e_0 + e_1*D + ... + e_{n-1}*D^{n-1}; injective on
/// exponent vectors with all digits below D. Throws std::domain_error on an
/// out-of-range digit.
Bigint kronecker_code(std::span<const Bigint> exps, const Bigint& degree_bound);

/// Base-D digits of E, least significant first; inverse of kronecker_code.
/// Requires 0 <= E < D^n.
std::vector<Bigint> d_adic_expand(const Bigint& code, const Bigint& degree_bound,
                                  std::size_t nvars);

/// Strict-weak-order on exponent vectors matching ascending Kronecker code
/// (compare most significant digit first).
bool exps_less(std::span<const Bigint> a, std::span<const Bigint> b);

/// Text format, UTF-8 with LF line endings:
///   nvars <n>
///   degree <D>
///   term <coeff> <e1> ... <en>     (one line per term)
/// Blank lines and '#' comments are ignored. Parsing rejects zero
/// coefficients, exponents outside [0, D), and duplicate exponent vectors;
/// term order in the file is free (the result is canonicalized).
SparsePoly parse_sparse_poly(std::istream& in);
SparsePoly parse_sparse_poly_file(const std::string& path);
void serialize_sparse_poly(const SparsePoly& f, std::ostream& out);
std::string serialize_sparse_poly(const SparsePoly& f);

/// Exactly T terms with distinct uniform exponent vectors and nonzero
/// coefficients uniform in [-H, H] \ {0}. Throws std::invalid_argument when
/// T > D^n. Deterministic for a fixed sampler state.
SparsePoly random_instance(std::size_t nvars, std::size_t nterms, const Bigint& degree_bound,
                           const Bigint& height, PrimeSampler& sampler);

} // namespace ssi
