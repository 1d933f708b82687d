// SPDX-License-Identifier: Apache-2.0
//
// ssinterp: sparse interpolation of supersparse integer polynomials from
// black-box evaluations, via reductions mod (z^p - 1) over a random word-size
// prime field ("small primes" method).
//
//   ssinterp gen     generate a random sparse polynomial instance
//   ssinterp interp  interpolate an explicit / product / circuit input
//   ssinterp bench   multiply-then-interpolate benchmark rows (TSV on stdout)
//   ssinterp verify  compare two polynomial files in canonical form

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ssi/engine.hpp"

namespace {

using ssi::Bigint;
using ssi::BlackBox;
using ssi::InterpParams;
using ssi::SparsePoly;

constexpr int kExitOk = 0;
constexpr int kExitFlagged = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
    std::string nvars = "1";
    std::string terms = "1";
    std::string degree = "2";
    std::string height = "1";
    std::uint64_t seed = 0;
};

std::uint64_t parse_count(const std::string& s, const char* what) {
    const Bigint v = Bigint::from_string(s);
    if (v.sign() <= 0) throw CLI::ValidationError(std::string(what) + " must be >= 1");
    return v.to_u64();
}

void write_poly(const SparsePoly& f, const std::string& path) {
    if (path == "-") {
        ssi::serialize_sparse_poly(f, std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    ssi::serialize_sparse_poly(f, out);
}

int cmd_gen(const CommonFlags& flags, const std::string& out_path) {
    ssi::PrimeSampler sampler(flags.seed);
    const SparsePoly f = ssi::random_instance(
        static_cast<std::size_t>(parse_count(flags.nvars, "nvars")),
        static_cast<std::size_t>(Bigint::from_string(flags.terms).to_u64()),
        Bigint::from_string(flags.degree), Bigint::from_string(flags.height), sampler);
    write_poly(f, out_path);
    return kExitOk;
}

BlackBox load_box(const std::string& path, const std::string& kind, std::size_t nvars,
                  const Bigint& degree) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    if (kind == "explicit") {
        SparsePoly f = ssi::parse_sparse_poly(in);
        if (f.nvars() != nvars) throw std::runtime_error("input nvars does not match --nvars");
        if (f.degree_bound() != degree)
            throw std::runtime_error("input degree bound does not match --degree");
        return BlackBox::make_explicit(std::move(f));
    }
    if (kind == "product") {
        auto factors = ssi::parse_product_file(in);
        if (factors.front().nvars() != nvars)
            throw std::runtime_error("product nvars does not match --nvars");
        return BlackBox::make_product(std::move(factors), degree);
    }
    if (kind == "circuit") {
        auto slp = ssi::parse_circuit_file(in);
        return BlackBox::make_circuit(std::move(slp), nvars, degree);
    }
    throw std::runtime_error("unknown input kind " + kind);
}

struct InterpFlags {
    CommonFlags common;
    std::string kind = "explicit";
    std::string mode = "heuristic";
    unsigned threads = 1;
    unsigned retries = 2;
    std::string force_q;
    std::string force_alpha;
    std::string force_primes;
};

InterpParams to_params(const InterpFlags& f) {
    InterpParams p;
    p.nvars = static_cast<std::size_t>(parse_count(f.common.nvars, "nvars"));
    p.nterms = static_cast<std::size_t>(parse_count(f.common.terms, "terms"));
    p.degree_bound = Bigint::from_string(f.common.degree);
    p.height = Bigint::from_string(f.common.height);
    p.mode = f.mode == "provable" ? ssi::Mode::provable : ssi::Mode::heuristic;
    p.seed = f.common.seed;
    p.workers = f.threads;
    p.retries = f.retries;
    if (!f.force_q.empty()) p.overrides.q = Bigint::from_string(f.force_q).to_u64();
    if (!f.force_alpha.empty()) p.overrides.alpha = Bigint::from_string(f.force_alpha).to_u64();
    if (!f.force_primes.empty()) {
        std::vector<std::uint64_t> primes;
        std::stringstream ss(f.force_primes);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) primes.push_back(Bigint::from_string(tok).to_u64());
        p.overrides.primes = std::move(primes);
    }
    return p;
}

int cmd_interp(const InterpFlags& flags, const std::string& input, const std::string& out_path) {
    const InterpParams params = to_params(flags);
    const BlackBox bb = load_box(input, flags.kind, params.nvars, params.degree_bound);
    const auto [poly, stats] = ssi::sparse_interp(bb, params);
    write_poly(poly, out_path);
    ssi::print_stats(stats, std::cerr);
    return stats.flagged_failure ? kExitFlagged : kExitOk;
}

int cmd_verify(const std::string& path_a, const std::string& path_b) {
    const SparsePoly a = ssi::parse_sparse_poly_file(path_a);
    const SparsePoly b = ssi::parse_sparse_poly_file(path_b);
    if (a == b) {
        std::cout << "identical\n";
        return kExitOk;
    }
    if (a.nvars() != b.nvars() || a.degree_bound() != b.degree_bound()) {
        std::cout << "headers differ: nvars " << a.nvars() << " vs " << b.nvars()
                  << ", degree " << a.degree_bound() << " vs " << b.degree_bound() << "\n";
        return kExitFlagged;
    }
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
        if (ta[i].coeff == tb[i].coeff && ta[i].exps == tb[i].exps) continue;
        std::cout << "first difference at term " << i << ": " << ta[i].coeff;
        for (const auto& e : ta[i].exps) std::cout << " " << e;
        std::cout << " vs " << tb[i].coeff;
        for (const auto& e : tb[i].exps) std::cout << " " << e;
        std::cout << "\n";
        return kExitFlagged;
    }
    std::cout << "term counts differ: " << ta.size() << " vs " << tb.size() << "\n";
    return kExitFlagged;
}

struct BenchFlags {
    unsigned factors = 1;
    std::string nvars = "20";
    std::string degree = "40";
    std::string terms = "3";
    std::string height = "1048576";
    unsigned threads = 1;
    unsigned retries = 2;
    std::uint64_t seed = 0;
    unsigned repeat = 1;
};

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

int cmd_bench(const BenchFlags& flags) {
    const std::size_t nvars = static_cast<std::size_t>(parse_count(flags.nvars, "nvars"));
    const std::size_t factor_terms =
        static_cast<std::size_t>(parse_count(flags.terms, "terms"));
    const Bigint factor_degree = Bigint::from_string(flags.degree);
    const Bigint factor_height = Bigint::from_string(flags.height);
    if (flags.factors < 1) throw CLI::ValidationError("--factors must be >= 1");

    ssi::PrimeSampler gen(flags.seed);
    std::vector<SparsePoly> factors;
    for (unsigned i = 0; i < flags.factors; ++i)
        factors.push_back(
            ssi::random_instance(nvars, factor_terms, factor_degree, factor_height, gen));

    // Bounds of the expanded product. The height bound assumes no additive
    // collisions among the product terms, which holds for random factors with
    // overwhelming probability; the sound worst case would push q past the
    // word-size cap for any interesting height.
    const Bigint degree_prod = factor_degree * Bigint{std::uint64_t{flags.factors}};
    Bigint terms_prod{1};
    Bigint height_prod{1};
    for (unsigned i = 0; i < flags.factors; ++i) {
        terms_prod *= Bigint{std::uint64_t{factor_terms}};
        height_prod *= factor_height;
    }
    if (!terms_prod.fits_u64())
        throw std::runtime_error("terms^factors overflows the term bound");

    InterpParams params;
    params.nvars = nvars;
    params.nterms = static_cast<std::size_t>(terms_prod.to_u64());
    params.degree_bound = degree_prod;
    params.height = height_prod;
    params.workers = flags.threads;
    params.retries = flags.retries;

    const BlackBox bb = BlackBox::make_product(factors, degree_prod);

    std::cout << "run\tfactors\tterms_bound\tdegree_bound\tmu\tlambda\teval_s\tsort_s\t"
                 "recovery_s\tverified\n";
    std::vector<double> eval_s, sort_s, rec_s;
    bool all_ok = true;
    ssi::RunStats last;
    for (unsigned r = 0; r < flags.repeat; ++r) {
        params.seed = flags.seed + r;
        const auto [poly, stats] = ssi::sparse_interp(bb, params);
        (void)poly;
        eval_s.push_back(stats.eval_seconds);
        sort_s.push_back(stats.sort_seconds);
        rec_s.push_back(stats.recovery_seconds);
        all_ok = all_ok && !stats.flagged_failure;
        std::cout << r << "\t" << flags.factors << "\t" << terms_prod << "\t" << degree_prod
                  << "\t" << stats.mu << "\t" << stats.lambda << "\t" << stats.eval_seconds
                  << "\t" << stats.sort_seconds << "\t" << stats.recovery_seconds << "\t"
                  << (stats.flagged_failure ? "fail" : "ok") << "\n";
        ssi::print_stats(stats, std::cerr);
        std::cerr << "\n";
        last = stats;
    }
    std::cout << "median\t" << flags.factors << "\t" << terms_prod << "\t" << degree_prod
              << "\t" << last.mu << "\t" << last.lambda << "\t" << median(eval_s) << "\t"
              << median(sort_s) << "\t" << median(rec_s) << "\t" << (all_ok ? "ok" : "fail")
              << "\n";
    return all_ok ? kExitOk : kExitFlagged;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"supersparse polynomial interpolation via the parallel small-primes method"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random sparse polynomial");
    CommonFlags gen_flags;
    std::string gen_out;
    gen->add_option("--nvars", gen_flags.nvars, "variable count");
    gen->add_option("--terms", gen_flags.terms, "term count");
    gen->add_option("--degree", gen_flags.degree, "per-variable degree bound D (exponents < D)");
    gen->add_option("--height", gen_flags.height, "coefficient height bound H");
    gen->add_option("--seed", gen_flags.seed, "random seed");
    gen->add_option("-o,--output", gen_out, "output path ('-' for stdout)")->required();

    // interp
    auto* interp = app.add_subcommand("interp", "interpolate a black-box input");
    InterpFlags in_flags;
    std::string in_path, in_out = "-";
    interp->add_option("input", in_path, "input file")->required();
    interp->add_option("--kind", in_flags.kind, "explicit | product | circuit")
        ->check(CLI::IsMember({"explicit", "product", "circuit"}));
    interp->add_option("--nvars", in_flags.common.nvars, "variable count");
    interp->add_option("--terms", in_flags.common.terms, "term bound T");
    interp->add_option("--degree", in_flags.common.degree, "degree bound D of the polynomial");
    interp->add_option("--height", in_flags.common.height, "height bound H");
    interp->add_option("--mode", in_flags.mode, "heuristic | provable")
        ->check(CLI::IsMember({"heuristic", "provable"}));
    interp->add_option("--threads", in_flags.threads, "worker count");
    interp->add_option("--seed", in_flags.common.seed, "random seed");
    interp->add_option("--retries", in_flags.retries, "verification retries (0 disables)");
    interp->add_option("-o,--output", in_out, "output path ('-' for stdout)");
    interp->add_option("--force-q", in_flags.force_q, "testing: fixed coefficient prime q");
    interp->add_option("--force-alpha", in_flags.force_alpha, "testing: fixed alpha");
    interp->add_option("--force-primes", in_flags.force_primes,
                       "testing: fixed comma-separated reduction primes");

    // bench
    auto* bench = app.add_subcommand("bench", "product benchmark (TSV rows on stdout)");
    BenchFlags b_flags;
    bench->add_option("--factors", b_flags.factors, "number of random factors to multiply");
    bench->add_option("--nvars", b_flags.nvars, "variables per factor");
    bench->add_option("--degree", b_flags.degree, "degree bound per factor");
    bench->add_option("--terms", b_flags.terms, "terms per factor");
    bench->add_option("--height", b_flags.height, "height bound per factor");
    bench->add_option("--threads", b_flags.threads, "worker count");
    bench->add_option("--retries", b_flags.retries, "verification retries");
    bench->add_option("--seed", b_flags.seed, "random seed");
    bench->add_option("--repeat", b_flags.repeat, "runs per configuration (median reported)");

    // verify
    auto* verify = app.add_subcommand("verify", "compare two polynomial files");
    std::string v_a, v_b;
    verify->add_option("a", v_a, "first file")->required();
    verify->add_option("b", v_b, "second file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_flags, gen_out);
        if (interp->parsed()) return cmd_interp(in_flags, in_path, in_out);
        if (bench->parsed()) return cmd_bench(b_flags);
        if (verify->parsed()) return cmd_verify(v_a, v_b);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
