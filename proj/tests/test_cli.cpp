// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the ssinterp binary: exit codes, file formats,
// determinism. Uses the build-time path of the tool.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "ssi/sparse_poly.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kBin = SSINTERP_BIN;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("ssinterp_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
    const int rc = std::system((kBin + " " + args + " >/dev/null 2>/dev/null").c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream oss;
    oss << in.rdbuf();
    return oss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

const char* kWorked =
    "nvars 2\n"
    "degree 10\n"
    "term 3 0 2\n"
    "term 2 3 4\n"
    "term 7 9 5\n";

} // namespace

TEST_CASE("gen writes a parseable instance and is deterministic") {
    TempDir tmp;
    const std::string a = tmp.file("a.sp"), b = tmp.file("b.sp");
    CHECK(run("gen --nvars 2 --terms 3 --degree 10 --height 10 --seed 1 -o " + a) == 0);
    CHECK(run("gen --nvars 2 --terms 3 --degree 10 --height 10 --seed 1 -o " + b) == 0);
    CHECK(slurp(a) == slurp(b));
    const ssi::SparsePoly f = ssi::parse_sparse_poly_file(a);
    CHECK(f.terms().size() == 3);
    CHECK(f.nvars() == 2);

    const std::string c = tmp.file("c.sp");
    CHECK(run("gen --nvars 2 --terms 3 --degree 10 --height 10 --seed 2 -o " + c) == 0);
    CHECK(slurp(a) != slurp(c));
}

TEST_CASE("gen rejects infeasible term counts with exit 2") {
    TempDir tmp;
    CHECK(run("gen --nvars 1 --terms 100 --degree 10 --height 5 -o " + tmp.file("x.sp")) == 2);
}

TEST_CASE("interp reproduces the worked example under forced randomness") {
    TempDir tmp;
    const std::string in = tmp.file("f.sp"), out = tmp.file("out.sp");
    spit(in, kWorked);
    CHECK(run("interp " + in +
              " --kind explicit --nvars 2 --terms 3 --degree 10 --height 10"
              " --force-q 101 --force-alpha 1 --force-primes 7,13,17 -o " +
              out) == 0);
    CHECK(slurp(out) == kWorked);
}

TEST_CASE("interp of a zero polynomial file succeeds with empty output") {
    TempDir tmp;
    const std::string in = tmp.file("z.sp"), out = tmp.file("zout.sp");
    spit(in, "nvars 2\ndegree 8\n");
    CHECK(run("interp " + in + " --nvars 2 --terms 1 --degree 8 --height 4 -o " + out) == 0);
    CHECK(slurp(out) == "nvars 2\ndegree 8\n");
}

TEST_CASE("interp recovers a product input; output equals the expansion") {
    TempDir tmp;
    const std::string in = tmp.file("prod.sp"), out = tmp.file("pout.sp");
    // (x + y)(x - y) over 2 variables, factor degree bound 2, product bound 4.
    spit(in,
         "nvars 2\ndegree 2\nterm 1 1 0\nterm 1 0 1\n---\n"
         "nvars 2\ndegree 2\nterm 1 1 0\nterm -1 0 1\n");
    CHECK(run("interp " + in +
              " --kind product --nvars 2 --terms 4 --degree 4 --height 2 -o " + out) == 0);
    const ssi::SparsePoly got = ssi::parse_sparse_poly_file(out);
    // x^2 - y^2
    CHECK(got.terms().size() == 2);
    CHECK(ssi::serialize_sparse_poly(got) ==
          "nvars 2\ndegree 4\nterm 1 2 0\nterm -1 0 2\n");
}

TEST_CASE("interp parses circuits") {
    TempDir tmp;
    const std::string in = tmp.file("c.slp"), out = tmp.file("cout.sp");
    spit(in, "in 0\nin 1\nmul 0 1\nconst -3\nadd 2 3\n");
    CHECK(run("interp " + in +
              " --kind circuit --nvars 2 --terms 2 --degree 4 --height 3 -o " + out) == 0);
    CHECK(slurp(out) == "nvars 2\ndegree 4\nterm -3 0 0\nterm 1 1 1\n");
}

TEST_CASE("interp exit code 2 on parse and usage errors") {
    TempDir tmp;
    const std::string bad = tmp.file("bad.sp");
    spit(bad, "nvars 2\ndegree 10\nterm 3 0 12\n");
    CHECK(run("interp " + bad + " --nvars 2 --terms 1 --degree 10 --height 5") == 2);
    CHECK(run("interp " + tmp.file("missing.sp") +
              " --nvars 2 --terms 1 --degree 10 --height 5") == 2);
    CHECK(run("interp " + bad + " --kind bogus") == 2);
    CHECK(run("frobnicate") == 2);
}

TEST_CASE("interp is deterministic across thread counts") {
    TempDir tmp;
    const std::string in = tmp.file("f.sp");
    CHECK(run("gen --nvars 3 --terms 40 --degree 65536 --height 1000 --seed 5 -o " + in) == 0);
    const std::string o1 = tmp.file("o1.sp"), o4 = tmp.file("o4.sp");
    CHECK(run("interp " + in +
              " --nvars 3 --terms 40 --degree 65536 --height 1000 --seed 9 --threads 1 -o " +
              o1) == 0);
    CHECK(run("interp " + in +
              " --nvars 3 --terms 40 --degree 65536 --height 1000 --seed 9 --threads 4 -o " +
              o4) == 0);
    CHECK(slurp(o1) == slurp(o4));
    CHECK(slurp(o1) == slurp(in)); // exact recovery
}

TEST_CASE("verify compares canonical forms") {
    TempDir tmp;
    const std::string a = tmp.file("a.sp"), b = tmp.file("b.sp"), c = tmp.file("c.sp");
    spit(a, kWorked);
    // Same polynomial, different term order in the file.
    spit(b, "nvars 2\ndegree 10\nterm 7 9 5\nterm 3 0 2\nterm 2 3 4\n");
    // One coefficient changed.
    spit(c, "nvars 2\ndegree 10\nterm 3 0 2\nterm 5 3 4\nterm 7 9 5\n");
    CHECK(run("verify " + a + " " + a) == 0);
    CHECK(run("verify " + a + " " + b) == 0);
    CHECK(run("verify " + a + " " + c) == 1);
    CHECK(run("verify " + a + " " + tmp.file("nope.sp")) == 2);
}

TEST_CASE("bench emits TSV rows and honors --repeat") {
    TempDir tmp;
    const std::string tsv = tmp.file("bench.tsv");
    const int rc = std::system((kBin +
                                " bench --factors 2 --nvars 3 --degree 6 --terms 2"
                                " --height 16 --threads 2 --repeat 3 --seed 4 > " +
                                tsv + " 2>/dev/null")
                                   .c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    const std::string text = slurp(tsv);
    CHECK(text.find("run\tfactors\t") == 0);
    CHECK(text.find("\nmedian\t") != std::string::npos);
    // Three runs plus header plus median row.
    std::size_t lines = 0;
    for (char ch : text) lines += ch == '\n';
    CHECK(lines == 5);
}
