// SPDX-License-Identifier: Apache-2.0
#include "ssi/sparse_poly.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ssi {

namespace {

void check_bounds(std::size_t nvars, const Bigint& degree_bound) {
    if (nvars == 0) throw std::invalid_argument("nvars must be >= 1");
    if (degree_bound < Bigint{1}) throw std::invalid_argument("degree bound must be >= 1");
}

void check_exps(const Term& t, std::size_t nvars, const Bigint& degree_bound) {
    if (t.exps.size() != nvars)
        throw std::domain_error("exponent vector length does not match nvars");
    for (const auto& e : t.exps) {
        if (e.sign() < 0) throw std::domain_error("negative exponent");
        if (e >= degree_bound) throw std::domain_error("exponent >= degree bound");
    }
}

} // namespace

SparsePoly::SparsePoly(std::size_t nvars, Bigint degree_bound)
    : nvars_(nvars), degree_bound_(std::move(degree_bound)) {
    check_bounds(nvars_, degree_bound_);
}

SparsePoly SparsePoly::from_terms(std::size_t nvars, Bigint degree_bound,
                                  std::vector<Term> terms) {
    check_bounds(nvars, degree_bound);
    for (const auto& t : terms) check_exps(t, nvars, degree_bound);
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return exps_less(a.exps, b.exps); });
    std::vector<Term> merged;
    for (auto& t : terms) {
        if (!merged.empty() && merged.back().exps == t.exps)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const Term& t) { return t.coeff.is_zero(); });
    SparsePoly f(nvars, std::move(degree_bound));
    f.terms_ = std::move(merged);
    return f;
}

bool operator==(const SparsePoly& a, const SparsePoly& b) {
    if (a.nvars_ != b.nvars_ || a.degree_bound_ != b.degree_bound_ ||
        a.terms_.size() != b.terms_.size())
        return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].coeff != b.terms_[i].coeff || a.terms_[i].exps != b.terms_[i].exps)
            return false;
    return true;
}

Bigint kronecker_code(std::span<const Bigint> exps, const Bigint& degree_bound) {
    Bigint code;
    for (std::size_t j = exps.size(); j-- > 0;) {
        if (exps[j].sign() < 0 || exps[j] >= degree_bound)
            throw std::domain_error("kronecker_code: exponent out of [0, D)");
        code = code * degree_bound + exps[j];
    }
    return code;
}

std::vector<Bigint> d_adic_expand(const Bigint& code, const Bigint& degree_bound,
                                  std::size_t nvars) {
    if (code.sign() < 0) throw std::domain_error("d_adic_expand: negative code");
    if (code >= Bigint::pow(degree_bound, static_cast<unsigned long>(nvars)))
        throw std::domain_error("d_adic_expand: code >= D^n");
    std::vector<Bigint> exps;
    exps.reserve(nvars);
    Bigint rest = code, q, r;
    for (std::size_t j = 0; j < nvars; ++j) {
        Bigint::divmod(rest, degree_bound, q, r);
        exps.push_back(r);
        rest = q;
    }
    return exps;
}

bool exps_less(std::span<const Bigint> a, std::span<const Bigint> b) {
    for (std::size_t j = a.size(); j-- > 0;) {
        if (a[j] != b[j]) return a[j] < b[j];
    }
    return false;
}

namespace {

struct LineError : std::runtime_error {
    LineError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what) {}
};

// Splits on spaces/tabs; empty tokens dropped.
std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

} // namespace

SparsePoly parse_sparse_poly(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool have_nvars = false, have_degree = false;
    std::size_t nvars = 0;
    Bigint degree_bound;
    std::vector<Term> terms;
    std::set<std::vector<Bigint>> seen;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto toks = tokenize(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        try {
            if (toks[0] == "nvars") {
                if (have_nvars || toks.size() != 2) throw LineError(lineno, "bad nvars line");
                nvars = static_cast<std::size_t>(Bigint::from_string(toks[1]).to_u64());
                have_nvars = true;
            } else if (toks[0] == "degree") {
                if (!have_nvars) throw LineError(lineno, "degree before nvars");
                if (have_degree || toks.size() != 2)
                    throw LineError(lineno, "bad degree line");
                degree_bound = Bigint::from_string(toks[1]);
                have_degree = true;
            } else if (toks[0] == "term") {
                if (!have_degree) throw LineError(lineno, "term before header");
                if (toks.size() != 2 + nvars)
                    throw LineError(lineno, "term arity does not match nvars");
                Term t;
                t.coeff = Bigint::from_string(toks[1]);
                if (t.coeff.is_zero()) throw LineError(lineno, "zero coefficient");
                for (std::size_t j = 0; j < nvars; ++j) {
                    Bigint e = Bigint::from_string(toks[2 + j]);
                    if (e.sign() < 0) throw LineError(lineno, "negative exponent");
                    if (e >= degree_bound)
                        throw LineError(lineno, "exponent >= degree bound");
                    t.exps.push_back(std::move(e));
                }
                if (!seen.insert(t.exps).second)
                    throw LineError(lineno, "duplicate exponent vector");
                terms.push_back(std::move(t));
            } else {
                throw LineError(lineno, "unknown directive '" + toks[0] + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw LineError(lineno, e.what());
        } catch (const std::overflow_error& e) {
            throw LineError(lineno, e.what());
        }
    }
    if (!have_nvars || !have_degree)
        throw std::runtime_error("missing nvars/degree header");
    return SparsePoly::from_terms(nvars, std::move(degree_bound), std::move(terms));
}

SparsePoly parse_sparse_poly_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_sparse_poly(in);
}

void serialize_sparse_poly(const SparsePoly& f, std::ostream& out) {
    out << "nvars " << f.nvars() << "\n";
    out << "degree " << f.degree_bound() << "\n";
    for (const auto& t : f.terms()) {
        out << "term " << t.coeff;
        for (const auto& e : t.exps) out << " " << e;
        out << "\n";
    }
}

std::string serialize_sparse_poly(const SparsePoly& f) {
    std::ostringstream oss;
    serialize_sparse_poly(f, oss);
    return oss.str();
}

SparsePoly random_instance(std::size_t nvars, std::size_t nterms, const Bigint& degree_bound,
                           const Bigint& height, PrimeSampler& sampler) {
    check_bounds(nvars, degree_bound);
    if (height < Bigint{1}) throw std::invalid_argument("height must be >= 1");
    const Bigint space = Bigint::pow(degree_bound, static_cast<unsigned long>(nvars));
    if (Bigint{static_cast<std::uint64_t>(nterms)} > space)
        throw std::invalid_argument("infeasible: T > D^n");

    std::set<std::vector<Bigint>> seen;
    std::vector<Term> terms;
    const Bigint two_h = height + height;
    while (terms.size() < nterms) {
        std::vector<Bigint> exps;
        exps.reserve(nvars);
        for (std::size_t j = 0; j < nvars; ++j) exps.push_back(sampler.uniform_below(degree_bound));
        if (!seen.insert(exps).second) continue;
        // c uniform on [0, 2H) maps onto [-H, -1] u [1, H].
        Bigint c = sampler.uniform_below(two_h);
        c = c < height ? c - height : c - height + Bigint{1};
        terms.push_back(Term{std::move(c), std::move(exps)});
    }
    return SparsePoly::from_terms(nvars, degree_bound, std::move(terms));
}

} // namespace ssi
