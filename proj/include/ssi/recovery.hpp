// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ssi/bigint.hpp"
#include "ssi/sparse_poly.hpp"
#include "ssi/zq.hpp"

namespace ssi {

/// One harvested triple (coefficient residue, exponent residue, prime): an
/// element of the accumulator list L.
struct TermImage {
    std::uint64_t coeff; // nonzero residue
    std::uint64_t expo;  // in [0, prime)
    std::uint64_t prime;

    friend bool operator==(const TermImage&, const TermImage&) = default;
};

/// All (exponent, prime) pairs seen with one coefficient value. Pairs are kept
/// sorted by descending prime. A repeated prime within a group means two
/// distinct residues claimed the same coefficient under the same reduction:
/// diversification failed for that coefficient and the group is invalid.
struct CoeffGroup {
    std::uint64_t coeff;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs; // (expo, prime)
    bool valid = true;
};

/// Sorts L by coefficient and splits it into one group per distinct value,
/// groups ascending by coefficient.
std::vector<CoeffGroup> group_images(std::vector<TermImage> images);

/// The unique E in [0, prod moduli) with E = residue_i mod modulus_i for every
/// pair. Throws std::invalid_argument when the moduli are not pairwise
/// coprime. An empty list yields 0.
Bigint crt_combine(std::span<const std::pair<std::uint64_t, std::uint64_t>> pairs);

struct RecoveredTerm {
    std::int64_t coeff; // in [-q/2, q/2]
    std::vector<Bigint> exps;
};

struct RecoveryResult {
    std::vector<RecoveredTerm> terms;
    std::size_t groups_total = 0;
    std::size_t accepted = 0;
    std::size_t below_threshold = 0;
    std::size_t invalid = 0;
    std::size_t rejected = 0; // out-of-range exponent or inconsistent residues
};

/// The back half of the interpolation: for every valid group appearing in at
/// least ceil(mu/2) reductions, Chinese-remainder a minimal descending-prime
/// prefix whose product reaches D^n, check the remaining pairs against the
/// combined exponent, undo the diversification (c alpha^{-E}), and expand the
/// Kronecker code into an exponent vector. Groups that fail any check are
/// dropped as collision debris, counted in the stats. Groups are independent;
/// with workers > 1 they are fanned out over an OpenMP loop and the results
/// collected back in group order, so the worker count never changes the
/// output.
RecoveryResult recover_terms(const std::vector<CoeffGroup>& groups, std::size_t mu,
                             const Bigint& degree_bound, std::size_t nvars, Modulus m,
                             std::uint64_t alpha, unsigned workers = 1);

/// Test instrumentation: for each prime, the number of planted terms whose
/// Kronecker residue is shared with another planted term.
std::vector<std::size_t> collision_census(const SparsePoly& planted,
                                          std::span<const std::uint64_t> primes);

} // namespace ssi
