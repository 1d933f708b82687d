// SPDX-License-Identifier: Apache-2.0
#include "ssi/black_box.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace ssi {

std::vector<std::uint64_t> alpha_power_table(std::uint64_t alpha, const Bigint& degree_bound,
                                             std::size_t nvars, Modulus m) {
    if (alpha % m.q == 0) throw std::invalid_argument("alpha must be a unit");
    std::vector<std::uint64_t> powers(nvars);
    powers[0] = alpha % m.q;
    for (std::size_t j = 1; j < nvars; ++j)
        powers[j] = mod_pow(powers[j - 1], degree_bound, m);
    return powers;
}

SubstitutionSpec make_substitution(std::size_t nvars, const Bigint& degree_bound, Modulus m,
                                   std::span<const std::uint64_t> alpha_powers,
                                   std::uint64_t p) {
    if (alpha_powers.size() != nvars)
        throw std::invalid_argument("alpha power table length mismatch");
    if (p == 0) throw std::invalid_argument("ring degree must be positive");
    SubstitutionSpec spec{m, p, {alpha_powers.begin(), alpha_powers.end()}, {}};
    spec.d_powers.resize(nvars);
    spec.d_powers[0] = 1 % p;
    if (nvars > 1) {
        const std::uint64_t d_mod_p = degree_bound.mod_u64(p);
        spec.d_powers[1] = d_mod_p;
        for (std::size_t j = 2; j < nvars; ++j)
            spec.d_powers[j] = mulmod_u64(spec.d_powers[j - 1], d_mod_p, p);
    }
    return spec;
}

SubstitutionSpec make_substitution(std::size_t nvars, const Bigint& degree_bound, Modulus m,
                                   std::uint64_t alpha, std::uint64_t p) {
    return make_substitution(nvars, degree_bound, m,
                             alpha_power_table(alpha, degree_bound, nvars, m), p);
}

BlackBox BlackBox::make_explicit(SparsePoly f) {
    BlackBox bb(Kind::explicit_poly, f.nvars(), f.degree_bound());
    bb.polys_.push_back(std::move(f));
    return bb;
}

BlackBox BlackBox::make_product(std::vector<SparsePoly> factors, Bigint degree_bound) {
    if (factors.empty()) throw std::invalid_argument("product needs at least one factor");
    for (const auto& f : factors) {
        if (f.nvars() != factors.front().nvars())
            throw std::invalid_argument("product factors must share nvars");
        if (f.degree_bound() != factors.front().degree_bound())
            throw std::invalid_argument("product factors must share their degree bound");
    }
    BlackBox bb(Kind::product, factors.front().nvars(), std::move(degree_bound));
    bb.polys_ = std::move(factors);
    return bb;
}

BlackBox BlackBox::make_circuit(StraightLineProgram slp, std::size_t nvars,
                                Bigint degree_bound) {
    if (slp.instrs.empty()) throw std::invalid_argument("empty circuit");
    for (std::size_t i = 0; i < slp.instrs.size(); ++i) {
        const auto& ins = slp.instrs[i];
        switch (ins.op) {
        case SlpInstr::Op::input:
            if (ins.a >= nvars) throw std::invalid_argument("circuit input index out of range");
            break;
        case SlpInstr::Op::constant:
            break;
        default:
            if (ins.a >= i || ins.b >= i)
                throw std::invalid_argument("circuit operand must reference an earlier instruction");
        }
    }
    BlackBox bb(Kind::circuit, nvars, std::move(degree_bound));
    bb.slp_ = std::move(slp);
    return bb;
}

namespace {

// One sparse polynomial's image under the substitution: term c * prod x_j^{e_j}
// contributes residue c * prod alpha_j^{e_j} at index sum e_j * D_j mod p.
CyclicPoly eval_sparse(const SparsePoly& f, const SubstitutionSpec& spec) {
    CyclicPoly r(spec.m, spec.p);
    for (const auto& t : f.terms()) {
        std::uint64_t idx = 0;
        std::uint64_t cres = reduce_signed(t.coeff, spec.m);
        for (std::size_t j = 0; j < t.exps.size(); ++j) {
            const std::uint64_t ej = t.exps[j].mod_u64(spec.p);
            idx = (idx + mulmod_u64(ej, spec.d_powers[j], spec.p)) % spec.p;
            if (spec.alpha_powers[j] != 1)
                cres = mod_mul(cres, mod_pow(spec.alpha_powers[j], t.exps[j], spec.m), spec.m);
        }
        cyclic_accumulate(r, idx, cres);
    }
    return r;
}

CyclicPoly eval_circuit(const StraightLineProgram& slp, const SubstitutionSpec& spec) {
    std::vector<CyclicPoly> vals;
    vals.reserve(slp.instrs.size());
    for (const auto& ins : slp.instrs) {
        switch (ins.op) {
        case SlpInstr::Op::input: {
            CyclicPoly v(spec.m, spec.p);
            v.coeffs[spec.d_powers[ins.a]] = spec.alpha_powers[ins.a];
            vals.push_back(std::move(v));
            break;
        }
        case SlpInstr::Op::constant: {
            CyclicPoly v(spec.m, spec.p);
            v.coeffs[0] = reduce_signed(ins.c, spec.m);
            vals.push_back(std::move(v));
            break;
        }
        case SlpInstr::Op::add:
            vals.push_back(cyclic_add(vals[ins.a], vals[ins.b]));
            break;
        case SlpInstr::Op::sub:
            vals.push_back(cyclic_sub(vals[ins.a], vals[ins.b]));
            break;
        case SlpInstr::Op::mul:
            vals.push_back(cyclic_mul(vals[ins.a], vals[ins.b]));
            break;
        }
    }
    return std::move(vals.back());
}

} // namespace

CyclicPoly evaluate_mod(const BlackBox& bb, const SubstitutionSpec& spec) {
    if (spec.alpha_powers.size() != bb.nvars() || spec.d_powers.size() != bb.nvars())
        throw std::invalid_argument("substitution does not match box arity");
    switch (bb.kind()) {
    case BlackBox::Kind::explicit_poly:
        return eval_sparse(bb.explicit_poly(), spec);
    case BlackBox::Kind::product: {
        // Fold left-to-right; parallelism lives across primes, not inside a query.
        CyclicPoly r = eval_sparse(bb.factors()[0], spec);
        for (std::size_t i = 1; i < bb.factors().size(); ++i)
            r = cyclic_mul(r, eval_sparse(bb.factors()[i], spec));
        return r;
    }
    case BlackBox::Kind::circuit:
        return eval_circuit(bb.circuit(), spec);
    }
    throw std::logic_error("unreachable");
}

namespace {

using ExpMap = std::map<std::vector<Bigint>, Bigint>;

void guard_size(const ExpMap& m, std::size_t limit) {
    if (m.size() > limit) throw std::length_error("expansion exceeds the term guard");
}

ExpMap to_map(const SparsePoly& f) {
    ExpMap m;
    for (const auto& t : f.terms()) m.emplace(t.exps, t.coeff);
    return m;
}

ExpMap map_add(const ExpMap& a, const ExpMap& b, bool negate_b, std::size_t limit) {
    ExpMap r = a;
    for (const auto& [e, c] : b) {
        Bigint& slot = r[e];
        slot += negate_b ? -c : c;
        if (slot.is_zero()) r.erase(e);
    }
    guard_size(r, limit);
    return r;
}

ExpMap map_mul(const ExpMap& a, const ExpMap& b, std::size_t limit) {
    ExpMap r;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            std::vector<Bigint> e(ea.size());
            for (std::size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
            Bigint& slot = r[e];
            slot += ca * cb;
            if (slot.is_zero()) r.erase(e);
        }
        guard_size(r, limit);
    }
    return r;
}

SparsePoly from_map(ExpMap m, std::size_t nvars, Bigint degree_bound) {
    std::vector<Term> terms;
    terms.reserve(m.size());
    for (auto& [e, c] : m) terms.push_back(Term{c, e});
    return SparsePoly::from_terms(nvars, std::move(degree_bound), std::move(terms));
}

} // namespace

SparsePoly expand_oracle(const BlackBox& bb, std::size_t term_limit) {
    switch (bb.kind()) {
    case BlackBox::Kind::explicit_poly:
        return bb.explicit_poly();
    case BlackBox::Kind::product: {
        ExpMap acc = to_map(bb.factors()[0]);
        for (std::size_t i = 1; i < bb.factors().size(); ++i)
            acc = map_mul(acc, to_map(bb.factors()[i]), term_limit);
        return from_map(std::move(acc), bb.nvars(), bb.degree_bound());
    }
    case BlackBox::Kind::circuit: {
        std::vector<ExpMap> vals;
        vals.reserve(bb.circuit().instrs.size());
        for (const auto& ins : bb.circuit().instrs) {
            switch (ins.op) {
            case SlpInstr::Op::input: {
                ExpMap v;
                std::vector<Bigint> e(bb.nvars(), Bigint{0});
                e[ins.a] = Bigint{1};
                v.emplace(std::move(e), Bigint{1});
                vals.push_back(std::move(v));
                break;
            }
            case SlpInstr::Op::constant: {
                ExpMap v;
                if (!ins.c.is_zero()) v.emplace(std::vector<Bigint>(bb.nvars(), Bigint{0}), ins.c);
                vals.push_back(std::move(v));
                break;
            }
            case SlpInstr::Op::add:
                vals.push_back(map_add(vals[ins.a], vals[ins.b], false, term_limit));
                break;
            case SlpInstr::Op::sub:
                vals.push_back(map_add(vals[ins.a], vals[ins.b], true, term_limit));
                break;
            case SlpInstr::Op::mul:
                vals.push_back(map_mul(vals[ins.a], vals[ins.b], term_limit));
                break;
            }
        }
        return from_map(std::move(vals.back()), bb.nvars(), bb.degree_bound());
    }
    }
    throw std::logic_error("unreachable");
}

SparsePoly sparse_mul(const SparsePoly& a, const SparsePoly& b) {
    if (a.nvars() != b.nvars()) throw std::invalid_argument("sparse_mul: nvars mismatch");
    ExpMap r = map_mul(to_map(a), to_map(b), std::size_t{1} << 22);
    Bigint bound = a.degree_bound() + b.degree_bound() - Bigint{1};
    return from_map(std::move(r), a.nvars(), std::move(bound));
}

std::vector<SparsePoly> parse_product_file(std::istream& in) {
    std::vector<SparsePoly> factors;
    std::stringstream block;
    std::string line;
    auto flush = [&]() {
        if (block.str().find_first_not_of(" \t\r\n") == std::string::npos) return;
        factors.push_back(parse_sparse_poly(block));
        block = std::stringstream{};
    };
    while (std::getline(in, line)) {
        std::string trimmed = line;
        if (!trimmed.empty() && trimmed.back() == '\r') trimmed.pop_back();
        if (trimmed == "---") {
            flush();
        } else {
            block << line << "\n";
        }
    }
    flush();
    if (factors.empty()) throw std::runtime_error("product file holds no factors");
    for (const auto& f : factors)
        if (f.nvars() != factors.front().nvars())
            throw std::runtime_error("product factors disagree on nvars");
    return factors;
}

StraightLineProgram parse_circuit_file(std::istream& in) {
    StraightLineProgram slp;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream iss(line);
        std::string op;
        if (!(iss >> op) || op[0] == '#') continue;
        auto fail = [&](const std::string& what) -> std::runtime_error {
            return std::runtime_error("line " + std::to_string(lineno) + ": " + what);
        };
        SlpInstr ins;
        if (op == "in") {
            std::size_t j;
            if (!(iss >> j)) throw fail("expected variable index");
            ins.op = SlpInstr::Op::input;
            ins.a = j;
        } else if (op == "const") {
            std::string c;
            if (!(iss >> c)) throw fail("expected constant");
            ins.op = SlpInstr::Op::constant;
            ins.c = Bigint::from_string(c);
        } else if (op == "add" || op == "sub" || op == "mul") {
            std::size_t i, k;
            if (!(iss >> i >> k)) throw fail("expected two operand indices");
            ins.op = op == "add" ? SlpInstr::Op::add
                                 : (op == "sub" ? SlpInstr::Op::sub : SlpInstr::Op::mul);
            ins.a = i;
            ins.b = k;
            if (i >= slp.instrs.size() || k >= slp.instrs.size())
                throw fail("operand references a later instruction");
        } else {
            throw fail("unknown instruction '" + op + "'");
        }
        std::string extra;
        if (iss >> extra) throw fail("trailing tokens");
        slp.instrs.push_back(std::move(ins));
    }
    if (slp.instrs.empty()) throw std::runtime_error("empty circuit file");
    return slp;
}

} // namespace ssi
