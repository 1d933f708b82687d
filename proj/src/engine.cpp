// SPDX-License-Identifier: Apache-2.0
#include "ssi/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <ostream>
#include <stdexcept>

namespace ssi {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Smallest Bigint >= v * x for a non-negative double v, computed without
// pushing x through a double.
Bigint ceil_scale(double v, const Bigint& x) {
    if (v <= 0) return Bigint{0};
    int exp = 0;
    const double mant = std::frexp(v, &exp); // v = mant * 2^exp, mant in [0.5, 1)
    const auto scaled =
        static_cast<std::uint64_t>(std::ceil(std::ldexp(mant, 62))); // ceil(mant * 2^62)
    Bigint r = Bigint{scaled} * x; // >= v * 2^(62 - exp) * x
    const int shift = 62 - exp;
    if (shift <= 0) return r * Bigint::pow2(static_cast<unsigned>(-shift));
    // ceil divide by 2^shift
    Bigint q, rem;
    Bigint::divmod(r, Bigint::pow2(static_cast<unsigned>(shift)), q, rem);
    if (!rem.is_zero()) q += Bigint{1};
    return q;
}

void check_q_range(const Bigint& q_range) {
    if (q_range + q_range >= Bigint::pow2(62))
        throw UnsupportedHeightError(
            "required coefficient modulus exceeds the word-size cap (2Q >= 2^62)");
}

} // namespace

ParamChoice select_params(Mode mode, std::size_t nvars, std::size_t nterms,
                          const Bigint& degree_bound, const Bigint& height) {
    if (nvars < 1 || nterms < 1) throw std::invalid_argument("need n >= 1 and T >= 1");
    if (degree_bound < Bigint{1} || height < Bigint{1})
        throw std::invalid_argument("need D >= 1 and H >= 1");
    ParamChoice choice{0, 2, Bigint{0}};
    const double lg_d = degree_bound == Bigint{1} ? 0.0 : degree_bound.log2();
    const Bigint two_h = height + height;
    if (mode == Mode::provable) {
        const double ln_d = lg_d * std::log(2.0);
        choice.k = std::max<std::uint64_t>(
            21, static_cast<std::uint64_t>(std::ceil(20.0 * static_cast<double>(nvars) * ln_d)));
        const double x = static_cast<double>(choice.ell) * static_cast<double>(nvars) *
                         static_cast<double>(nterms) * lg_d;
        choice.q_range = std::max(two_h, ceil_scale(x * x / 4.0, degree_bound));
    } else {
        if (nterms >= 1000)
            choice.k = 38;
        else if (nterms >= 100)
            choice.k = 50;
        else
            choice.k = std::max<std::uint64_t>(
                50, static_cast<std::uint64_t>(
                        std::ceil(10000.0 / static_cast<double>(nterms))));
        // Degenerate shapes (few variables, large T) get only a handful of
        // reduction primes, and a term dies once it collides in more than
        // mu - ceil(mu/2) of them. Per term and prime the collision chance is
        // about T/lambda = 1/k, so the expected number of lost terms is
        // roughly T * C(mu, r) / k^r with r = floor(mu/2) + 1. Double k until
        // that is negligible; large-mu shapes keep their band value.
        const Bigint code_space = Bigint::pow(degree_bound, static_cast<unsigned long>(nvars));
        for (int iter = 0; iter < 64; ++iter) {
            const std::uint64_t lambda = choice.k * static_cast<std::uint64_t>(nterms);
            if (lambda / choice.k != nterms || lambda >= (std::uint64_t{1} << 61))
                throw std::invalid_argument("lambda = k*T overflows");
            if (code_space <= Bigint{lambda}) break; // exponents below every prime
            const std::size_t mu = compute_mu(choice.ell, nvars, degree_bound, lambda);
            const double r = std::floor(static_cast<double>(mu) / 2.0) + 1.0;
            const double log_losses = std::log(static_cast<double>(nterms)) +
                                      std::lgamma(mu + 1.0) - std::lgamma(r + 1.0) -
                                      std::lgamma(mu - r + 1.0) -
                                      r * std::log(static_cast<double>(choice.k));
            if (log_losses <= std::log(0.01)) break;
            choice.k *= 2;
        }
        // Floor keeps coincident diversified coefficients rare even when the
        // height bound is tiny: expected duplicates ~ T^2 / (2Q).
        const std::uint64_t t64 = static_cast<std::uint64_t>(nterms);
        Bigint floor_q = Bigint::pow2(20);
        floor_q = std::max(floor_q, Bigint{t64} * Bigint{t64} * Bigint{128});
        choice.q_range = std::max(two_h, floor_q);
    }
    check_q_range(choice.q_range);
    return choice;
}

std::size_t compute_mu(std::uint64_t ell, std::size_t nvars, const Bigint& degree_bound,
                       std::uint64_t lambda) {
    if (lambda < 2) throw std::invalid_argument("lambda must be >= 2");
    const double lg_d = degree_bound == Bigint{1} ? 0.0 : degree_bound.log2();
    const double mu = std::ceil(static_cast<double>(ell) * static_cast<double>(nvars) * lg_d /
                                std::log2(static_cast<double>(lambda)));
    return mu < 1.0 ? 1 : static_cast<std::size_t>(mu);
}

RunSetup derive_run(const InterpParams& params, PrimeSampler& sampler) {
    if (params.workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (params.k == 0 || params.ell == 0 || params.q_range < Bigint{1})
        throw std::invalid_argument("k, ell and Q must be resolved before derive_run");
    check_q_range(params.q_range);

    const std::uint64_t q = params.overrides.q
                                ? *params.overrides.q
                                : random_prime(params.q_range.to_u64(),
                                               (params.q_range + params.q_range).to_u64(),
                                               sampler);
    Modulus m(q);
    const std::uint64_t alpha =
        params.overrides.alpha ? *params.overrides.alpha : sampler.uniform_u64(1, q - 1);

    std::uint64_t lambda = params.k * static_cast<std::uint64_t>(params.nterms);
    if (lambda / params.k != params.nterms || lambda >= (std::uint64_t{1} << 62))
        throw std::invalid_argument("lambda = k*T overflows");
    if (lambda < 2) lambda = 2;

    std::size_t mu = compute_mu(params.ell, params.nvars, params.degree_bound, lambda);
    std::vector<std::uint64_t> primes;
    std::size_t escalations = 0;
    if (params.overrides.primes) {
        primes = *params.overrides.primes;
        mu = primes.size();
    } else {
        for (;;) {
            try {
                primes = distinct_primes(lambda, 2 * lambda, mu, sampler);
                break;
            } catch (const InsufficientPrimesError&) {
                if (lambda >= (std::uint64_t{1} << 61))
                    throw std::invalid_argument("lambda escalation overflow");
                lambda *= 2;
                mu = compute_mu(params.ell, params.nvars, params.degree_bound, lambda);
                ++escalations;
            }
        }
    }
    return RunSetup{lambda,
                    mu,
                    m,
                    alpha,
                    alpha_power_table(alpha, params.degree_bound, params.nvars, m),
                    std::move(primes),
                    escalations};
}

namespace {

std::vector<TermImage> images_for_prime(const BlackBox& bb, const RunSetup& setup,
                                        const Bigint& degree_bound, std::uint64_t prime) {
    const SubstitutionSpec spec =
        make_substitution(bb.nvars(), degree_bound, setup.m, setup.alpha_powers, prime);
    const CyclicPoly image = evaluate_mod(bb, spec);
    std::vector<TermImage> out;
    for (const auto& [c, j] : nonzero_terms(image)) out.push_back(TermImage{c, j, prime});
    return out;
}

} // namespace

ImageBuckets evaluate_images_serial(const BlackBox& bb, const RunSetup& setup,
                                    const Bigint& degree_bound) {
    ImageBuckets buckets(setup.primes.size());
    for (std::size_t i = 0; i < setup.primes.size(); ++i)
        buckets[i] = images_for_prime(bb, setup, degree_bound, setup.primes[i]);
    return buckets;
}

ImageBuckets evaluate_images_parallel(const BlackBox& bb, const RunSetup& setup,
                                      const Bigint& degree_bound, unsigned workers) {
    ImageBuckets buckets(setup.primes.size());
    std::exception_ptr error;
    const long count = static_cast<long>(setup.primes.size());
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (long i = 0; i < count; ++i) {
        try {
            buckets[i] = images_for_prime(bb, setup, degree_bound, setup.primes[i]);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return buckets;
}

bool verify_candidate(const BlackBox& bb, const SparsePoly& candidate, std::uint64_t lambda,
                      std::span<const std::uint64_t> run_primes, const Bigint& q_range,
                      PrimeSampler& sampler) {
    std::uint64_t p_star = 0;
    for (int attempt = 0; attempt < 256; ++attempt) {
        p_star = random_prime(lambda, 2 * lambda, sampler);
        if (std::find(run_primes.begin(), run_primes.end(), p_star) == run_primes.end()) break;
    }
    const std::uint64_t q_star =
        random_prime(q_range.to_u64(), (q_range + q_range).to_u64(), sampler);
    const Modulus m(q_star);
    const SubstitutionSpec spec =
        make_substitution(bb.nvars(), bb.degree_bound(), m, /*alpha=*/1, p_star);
    const BlackBox cand_box = BlackBox::make_explicit(candidate);
    return evaluate_mod(bb, spec) == evaluate_mod(cand_box, spec);
}

namespace {

struct AttemptResult {
    SparsePoly poly;
    RunStats stats;
};

AttemptResult run_once(const BlackBox& bb, const InterpParams& params, PrimeSampler& sampler) {
    RunStats stats;
    const RunSetup setup = derive_run(params, sampler);
    stats.lambda = setup.lambda;
    stats.mu = setup.mu;
    stats.q = setup.m.q;
    stats.alpha = setup.alpha;
    stats.primes = setup.primes;
    stats.lambda_escalations = setup.lambda_escalations;

    auto t0 = std::chrono::steady_clock::now();
    const ImageBuckets buckets =
        params.workers == 1
            ? evaluate_images_serial(bb, setup, params.degree_bound)
            : evaluate_images_parallel(bb, setup, params.degree_bound, params.workers);
    stats.eval_seconds = seconds_since(t0);

    std::vector<TermImage> images;
    for (const auto& b : buckets) images.insert(images.end(), b.begin(), b.end());
    stats.triples = images.size();

    t0 = std::chrono::steady_clock::now();
    const std::vector<CoeffGroup> groups = group_images(std::move(images));
    stats.sort_seconds = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const RecoveryResult rec = recover_terms(groups, setup.mu, params.degree_bound,
                                             params.nvars, setup.m, setup.alpha,
                                             params.workers);
    stats.groups_total = rec.groups_total;
    stats.groups_accepted = rec.accepted;
    stats.groups_below_threshold = rec.below_threshold;
    stats.groups_invalid = rec.invalid;
    stats.groups_rejected = rec.rejected;

    std::vector<Term> terms;
    terms.reserve(rec.terms.size());
    for (const auto& t : rec.terms) terms.push_back(Term{Bigint{t.coeff}, t.exps});
    SparsePoly poly =
        SparsePoly::from_terms(params.nvars, params.degree_bound, std::move(terms));
    stats.recovery_seconds = seconds_since(t0);
    return AttemptResult{std::move(poly), std::move(stats)};
}

} // namespace

std::pair<SparsePoly, RunStats> sparse_interp(const BlackBox& bb, const InterpParams& params) {
    if (bb.nvars() != params.nvars)
        throw std::invalid_argument("box arity does not match parameters");
    InterpParams resolved = params;
    if (resolved.k == 0 || resolved.ell == 0 || resolved.q_range.is_zero()) {
        const ParamChoice choice = select_params(resolved.mode, resolved.nvars,
                                                 resolved.nterms, resolved.degree_bound,
                                                 resolved.height);
        if (resolved.k == 0) resolved.k = choice.k;
        if (resolved.ell == 0) resolved.ell = choice.ell;
        if (resolved.q_range.is_zero()) resolved.q_range = choice.q_range;
    }
    check_q_range(resolved.q_range);

    PrimeSampler sampler(resolved.seed);
    AttemptResult last = run_once(bb, resolved, sampler);
    if (resolved.retries == 0) return {std::move(last.poly), std::move(last.stats)};

    for (unsigned attempt = 0;; ++attempt) {
        last.stats.verification_run = true;
        last.stats.retries_used = attempt;
        if (verify_candidate(bb, last.poly, last.stats.lambda, last.stats.primes,
                             resolved.q_range, sampler)) {
            last.stats.verified = true;
            return {std::move(last.poly), std::move(last.stats)};
        }
        if (attempt == resolved.retries) break;
        last = run_once(bb, resolved, sampler);
    }
    last.stats.verified = false;
    last.stats.flagged_failure = true;
    last.stats.retries_used = resolved.retries;
    return {std::move(last.poly), std::move(last.stats)};
}

void print_stats(const RunStats& stats, std::ostream& out) {
    out << "lambda " << stats.lambda << "\n";
    out << "mu " << stats.mu << "\n";
    out << "q " << stats.q << "\n";
    out << "alpha " << stats.alpha << "\n";
    out << "primes ";
    for (std::size_t i = 0; i < stats.primes.size(); ++i)
        out << (i ? "," : "") << stats.primes[i];
    out << "\n";
    out << "eval_seconds " << stats.eval_seconds << "\n";
    out << "sort_seconds " << stats.sort_seconds << "\n";
    out << "recovery_seconds " << stats.recovery_seconds << "\n";
    out << "triples " << stats.triples << "\n";
    out << "groups_total " << stats.groups_total << "\n";
    out << "groups_accepted " << stats.groups_accepted << "\n";
    out << "groups_below_threshold " << stats.groups_below_threshold << "\n";
    out << "groups_invalid " << stats.groups_invalid << "\n";
    out << "groups_rejected " << stats.groups_rejected << "\n";
    out << "lambda_escalations " << stats.lambda_escalations << "\n";
    out << "retries_used " << stats.retries_used << "\n";
    out << "verification_run " << (stats.verification_run ? "true" : "false") << "\n";
    out << "verified " << (stats.verified ? "true" : "false") << "\n";
    out << "flagged_failure " << (stats.flagged_failure ? "true" : "false") << "\n";
}

} // namespace ssi
