// SPDX-License-Identifier: Apache-2.0
#include "ssi/recovery.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace ssi {

namespace {

// Extended Euclid; works for any modulus, unlike the Fermat inverse.
std::uint64_t inv_mod_u64(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::invalid_argument("crt_combine: moduli are not pairwise coprime");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

} // namespace

std::vector<CoeffGroup> group_images(std::vector<TermImage> images) {
    std::sort(images.begin(), images.end(), [](const TermImage& a, const TermImage& b) {
        if (a.coeff != b.coeff) return a.coeff < b.coeff;
        if (a.prime != b.prime) return a.prime > b.prime;
        return a.expo < b.expo;
    });
    std::vector<CoeffGroup> groups;
    for (const auto& img : images) {
        if (groups.empty() || groups.back().coeff != img.coeff) {
            groups.push_back(CoeffGroup{img.coeff, {}, true});
        }
        auto& g = groups.back();
        if (!g.pairs.empty() && g.pairs.back().second == img.prime) g.valid = false;
        g.pairs.emplace_back(img.expo, img.prime);
    }
    return groups;
}

Bigint crt_combine(std::span<const std::pair<std::uint64_t, std::uint64_t>> pairs) {
    Bigint e{0};
    Bigint modulus{1};
    for (const auto& [d, p] : pairs) {
        if (p == 0 || d >= p) throw std::invalid_argument("crt_combine: residue out of range");
        const std::uint64_t cur = e.mod_u64(p);
        const std::uint64_t m_mod_p = modulus.mod_u64(p);
        const std::uint64_t delta = d >= cur ? d - cur : d + p - cur;
        const std::uint64_t t = mulmod_u64(delta, inv_mod_u64(m_mod_p, p), p);
        e += modulus * Bigint{t};
        modulus *= Bigint{p};
    }
    return e;
}

namespace {

enum class GroupFate { accepted, below_threshold, invalid, rejected };

struct GroupOutcome {
    GroupFate fate = GroupFate::rejected;
    RecoveredTerm term; // meaningful only when accepted
};

GroupOutcome process_group(const CoeffGroup& g, std::size_t threshold,
                           const Bigint& code_space, const Bigint& degree_bound,
                           std::size_t nvars, Modulus m, std::uint64_t alpha_inv) {
    if (!g.valid) return {GroupFate::invalid, {}};
    if (g.pairs.size() < threshold) return {GroupFate::below_threshold, {}};
    auto pairs = g.pairs;
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });

    // Least descending-prime prefix whose product covers the code space; the
    // rest become free consistency checks.
    std::size_t prefix = 0;
    Bigint prod{1};
    while (prefix < pairs.size() && prod < code_space) {
        prod *= Bigint{pairs[prefix].second};
        ++prefix;
    }
    if (prod < code_space)
        return {GroupFate::rejected, {}}; // cannot be pinned down; parameters
                                          // guarantee this never fires
    const Bigint code = crt_combine(std::span{pairs}.first(prefix));
    bool ok = code < code_space;
    for (std::size_t i = prefix; ok && i < pairs.size(); ++i)
        ok = code.mod_u64(pairs[i].second) == pairs[i].first;
    if (!ok) return {GroupFate::rejected, {}};

    const std::uint64_t undiversified = mod_mul(g.coeff, mod_pow(alpha_inv, code, m), m);
    return {GroupFate::accepted,
            RecoveredTerm{signed_lift(undiversified, m),
                          d_adic_expand(code, degree_bound, nvars)}};
}

} // namespace

RecoveryResult recover_terms(const std::vector<CoeffGroup>& groups, std::size_t mu,
                             const Bigint& degree_bound, std::size_t nvars, Modulus m,
                             std::uint64_t alpha, unsigned workers) {
    if (alpha % m.q == 0) throw std::invalid_argument("alpha must be a unit");
    const std::size_t threshold = (mu + 1) / 2;
    const Bigint code_space = Bigint::pow(degree_bound, static_cast<unsigned long>(nvars));
    const std::uint64_t alpha_inv = mod_inv(alpha, m);

    std::vector<GroupOutcome> outcomes(groups.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < groups.size(); ++i)
            outcomes[i] = process_group(groups[i], threshold, code_space, degree_bound,
                                        nvars, m, alpha_inv);
    } else {
        std::exception_ptr error;
        const long count = static_cast<long>(groups.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(workers)
        for (long i = 0; i < count; ++i) {
            try {
                outcomes[i] = process_group(groups[i], threshold, code_space, degree_bound,
                                            nvars, m, alpha_inv);
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
    }

    RecoveryResult out;
    out.groups_total = groups.size();
    for (auto& o : outcomes) {
        switch (o.fate) {
        case GroupFate::accepted:
            out.terms.push_back(std::move(o.term));
            ++out.accepted;
            break;
        case GroupFate::below_threshold: ++out.below_threshold; break;
        case GroupFate::invalid: ++out.invalid; break;
        case GroupFate::rejected: ++out.rejected; break;
        }
    }
    return out;
}

std::vector<std::size_t> collision_census(const SparsePoly& planted,
                                          std::span<const std::uint64_t> primes) {
    std::vector<Bigint> codes;
    codes.reserve(planted.terms().size());
    for (const auto& t : planted.terms())
        codes.push_back(kronecker_code(t.exps, planted.degree_bound()));

    std::vector<std::size_t> census;
    census.reserve(primes.size());
    for (std::uint64_t p : primes) {
        std::unordered_map<std::uint64_t, std::size_t> freq;
        for (const auto& code : codes) ++freq[code.mod_u64(p)];
        std::size_t colliding = 0;
        for (const auto& code : codes)
            if (freq[code.mod_u64(p)] > 1) ++colliding;
        census.push_back(colliding);
    }
    return census;
}

} // namespace ssi
