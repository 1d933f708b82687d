// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ssi/bigint.hpp"
#include "ssi/black_box.hpp"
#include "ssi/prime_gen.hpp"
#include "ssi/recovery.hpp"
#include "ssi/sparse_poly.hpp"
#include "ssi/zq.hpp"

namespace ssi {

enum class Mode { heuristic, provable };

struct UnsupportedHeightError : std::runtime_error {
    explicit UnsupportedHeightError(const std::string& what) : std::runtime_error(what) {}
};

/// Testing hooks: when set, used verbatim instead of fresh random draws.
struct Overrides {
    std::optional<std::uint64_t> q;
    std::optional<std::uint64_t> alpha;
    std::optional<std::vector<std::uint64_t>> primes;
};

struct InterpParams {
    std::size_t nvars = 1;
    std::size_t nterms = 1;     // T: bound on nonzero terms
    Bigint degree_bound{2};     // D: per-variable bound, exponents < D
    Bigint height{1};           // H: bound on |coefficients|
    Mode mode = Mode::heuristic;
    // 0 / 0 / zero mean "fill from select_params(mode, ...)".
    std::uint64_t k = 0;
    std::uint64_t ell = 0;
    Bigint q_range; // Q: q is drawn from [Q, 2Q]
    std::uint64_t seed = 0;
    unsigned workers = 1;
    unsigned retries = 2;
    Overrides overrides;
};

struct RunStats {
    std::uint64_t lambda = 0;
    std::size_t mu = 0;
    std::uint64_t q = 0;
    std::uint64_t alpha = 0;
    std::vector<std::uint64_t> primes;
    double eval_seconds = 0;
    double sort_seconds = 0;
    double recovery_seconds = 0;
    std::size_t triples = 0;
    std::size_t groups_total = 0;
    std::size_t groups_accepted = 0;
    std::size_t groups_below_threshold = 0;
    std::size_t groups_invalid = 0;
    std::size_t groups_rejected = 0;
    std::size_t lambda_escalations = 0;
    unsigned retries_used = 0;
    bool verification_run = false;
    bool verified = false;
    bool flagged_failure = false;
};

struct ParamChoice {
    std::uint64_t k;
    std::uint64_t ell;
    Bigint q_range;
};

/// Parameter selection.
/// provable: k = max(21, ceil(20 n ln D)), ell = 2,
///           Q = max(2H, ceil((ell n T lg D)^2 / 4) * D).
/// heuristic: ell = 2; k starts at 38 for T >= 1000, 50 for 100 <= T < 1000,
///            max(50, ceil(10000/T)) below that, then doubles while the shape
///            is collision-fragile (few primes and a material chance that a
///            term collides in more than half of them);
///            Q = max(2H, 2^20, 128 T^2).
/// Throws UnsupportedHeightError when 2Q >= 2^62 (word-size modulus cap).
ParamChoice select_params(Mode mode, std::size_t nvars, std::size_t nterms,
                          const Bigint& degree_bound, const Bigint& height);

/// mu = ceil(ell * n * lg D / lg lambda), at least 1.
std::size_t compute_mu(std::uint64_t ell, std::size_t nvars, const Bigint& degree_bound,
                       std::uint64_t lambda);

/// One run's random choices, drawn single-threaded before any parallel work.
struct RunSetup {
    std::uint64_t lambda;
    std::size_t mu;
    Modulus m;
    std::uint64_t alpha;
    std::vector<std::uint64_t> alpha_powers;
    std::vector<std::uint64_t> primes;
    std::size_t lambda_escalations;
};

/// Draws q from [Q, 2Q], alpha from the unit group, and mu distinct primes
/// from [lambda, 2*lambda], doubling lambda (and recomputing mu) whenever the
/// interval holds too few primes. Draw order is fixed: q, alpha, primes.
RunSetup derive_run(const InterpParams& params, PrimeSampler& sampler);

/// The images harvested from one prime's reduction.
using ImageBuckets = std::vector<std::vector<TermImage>>;

/// Serial reference for the evaluation fan-out; kept (and cross-checked in
/// tests) as the baseline the OpenMP kernel must reproduce exactly.
ImageBuckets evaluate_images_serial(const BlackBox& bb, const RunSetup& setup,
                                    const Bigint& degree_bound);
/// OpenMP fan-out over the primes, one task per prime, task-local buckets.
/// Bucket contents are identical to the serial reference for any worker count.
ImageBuckets evaluate_images_parallel(const BlackBox& bb, const RunSetup& setup,
                                      const Bigint& degree_bound, unsigned workers);

/// Probabilistic post-check: evaluates box and candidate at a fresh prime
/// p* (outside the run's primes) with fresh q* and alpha* = 1 and compares the
/// ring images.
bool verify_candidate(const BlackBox& bb, const SparsePoly& candidate, std::uint64_t lambda,
                      std::span<const std::uint64_t> run_primes, const Bigint& q_range,
                      PrimeSampler& sampler);

/// Full interpolation: derive a run, evaluate all primes (in parallel),
/// group, recover, canonicalize. With retries > 0 the candidate is gated by
/// verify_candidate and the whole run repeats with fresh randomness (same
/// seed stream) on failure; a final failure returns the last candidate with
/// flagged_failure set rather than erroring.
std::pair<SparsePoly, RunStats> sparse_interp(const BlackBox& bb, const InterpParams& params);

/// Key-value telemetry report, one field per line.
void print_stats(const RunStats& stats, std::ostream& out);

} // namespace ssi
