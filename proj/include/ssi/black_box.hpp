// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ssi/bigint.hpp"
#include "ssi/cyclic.hpp"
#include "ssi/sparse_poly.hpp"
#include "ssi/zq.hpp"

namespace ssi {

/// Arithmetic circuit over the input variables: instructions reference
/// strictly earlier instructions; the last instruction is the output. No
/// division (z^p - 1 is reducible, the evaluation ring has zero divisors).
struct SlpInstr {
    enum class Op { input, constant, add, sub, mul };
    Op op;
    std::size_t a = 0, b = 0; // operand instruction indices, or variable index for input
    Bigint c;                 // constant payload
};

struct StraightLineProgram {
    std::vector<SlpInstr> instrs;
};

/// Everything a substitution query needs:
/// the image of variable j is alpha_powers[j] * z^(d_powers[j]) in
/// (Z/qZ)[z]/(z^p - 1), with alpha_powers[j] = alpha^(D^j) mod q and
/// d_powers[j] = D^j mod p.
struct SubstitutionSpec {
    Modulus m;
    std::uint64_t p;
    std::vector<std::uint64_t> alpha_powers;
    std::vector<std::uint64_t> d_powers;
};

/// alpha_powers for a given (alpha, D, q); shared across all primes of a run.
std::vector<std::uint64_t> alpha_power_table(std::uint64_t alpha, const Bigint& degree_bound,
                                             std::size_t nvars, Modulus m);

SubstitutionSpec make_substitution(std::size_t nvars, const Bigint& degree_bound, Modulus m,
                                   std::span<const std::uint64_t> alpha_powers,
                                   std::uint64_t p);
SubstitutionSpec make_substitution(std::size_t nvars, const Bigint& degree_bound, Modulus m,
                                   std::uint64_t alpha, std::uint64_t p);

/// The evaluator abstraction: one of an explicit sparse polynomial, a product
/// of sparse factors, or a straight-line program, all answering the single
/// query form evaluate_mod. n and D describe the represented (expanded)
/// polynomial; callers are responsible for the T/D/H bounds they pass to the
/// interpolation engine.
class BlackBox {
public:
    enum class Kind { explicit_poly, product, circuit };

    static BlackBox make_explicit(SparsePoly f);
    /// Factors must share nvars and their own degree bound; degree_bound is
    /// the caller's bound for the expanded product.
    static BlackBox make_product(std::vector<SparsePoly> factors, Bigint degree_bound);
    static BlackBox make_circuit(StraightLineProgram slp, std::size_t nvars,
                                 Bigint degree_bound);

    Kind kind() const { return kind_; }
    std::size_t nvars() const { return nvars_; }
    const Bigint& degree_bound() const { return degree_bound_; }

    const SparsePoly& explicit_poly() const { return polys_.front(); }
    const std::vector<SparsePoly>& factors() const { return polys_; }
    const StraightLineProgram& circuit() const { return slp_; }

private:
    BlackBox(Kind kind, std::size_t nvars, Bigint degree_bound)
        : kind_(kind), nvars_(nvars), degree_bound_(std::move(degree_bound)) {}

    Kind kind_;
    std::size_t nvars_;
    Bigint degree_bound_;
    std::vector<SparsePoly> polys_;
    StraightLineProgram slp_;
};

/// f(alpha_0 z^{D_0}, ..., alpha_{n-1} z^{D_{n-1}}) mod (z^p - 1) over Z/qZ.
/// All three box kinds return the identical ring element when they represent
/// the same polynomial. No shared mutable state: safe to call concurrently.
CyclicPoly evaluate_mod(const BlackBox& bb, const SubstitutionSpec& spec);

/// Ground-truth expansion over the integers, canonical form. Desk scale only:
/// throws std::length_error once the working term count exceeds term_limit.
SparsePoly expand_oracle(const BlackBox& bb, std::size_t term_limit = std::size_t{1} << 20);

/// Exact sparse product over the integers (test oracle support). Result
/// degree bound is a.D + b.D - 1.
SparsePoly sparse_mul(const SparsePoly& a, const SparsePoly& b);

/// Product file: SparsePoly blocks separated by a '---' line, matching nvars.
std::vector<SparsePoly> parse_product_file(std::istream& in);
/// Circuit file: one instruction per line,
///   in <j> | const <c> | add <i> <k> | sub <i> <k> | mul <i> <k>
/// with 0-based instruction indices.
StraightLineProgram parse_circuit_file(std::istream& in);

} // namespace ssi
