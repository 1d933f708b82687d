// SPDX-License-Identifier: Apache-2.0
//
// Compares the serial reference evaluation fan-out against the OpenMP kernel
// on one planted instance and prints a row per thread count. The two paths
// must produce identical images; this binary checks that on every run before
// timing.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "ssi/engine.hpp"

using ssi::Bigint;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

} // namespace

int main(int argc, char** argv) {
    std::size_t nvars = 8;
    std::size_t nterms = 1000;
    unsigned degree_bits = 30;
    unsigned max_threads = 8;
    int reps = 3;
    if (argc > 1) nterms = std::strtoull(argv[1], nullptr, 10);
    if (argc > 2) nvars = std::strtoull(argv[2], nullptr, 10);
    if (argc > 3) degree_bits = static_cast<unsigned>(std::strtoul(argv[3], nullptr, 10));
    if (argc > 4) max_threads = static_cast<unsigned>(std::strtoul(argv[4], nullptr, 10));

    const Bigint degree = Bigint::pow2(degree_bits);
    ssi::PrimeSampler gen(17);
    const ssi::SparsePoly f = ssi::random_instance(nvars, nterms, degree, Bigint::pow2(15), gen);
    const ssi::BlackBox bb = ssi::BlackBox::make_explicit(f);

    ssi::InterpParams params;
    params.nvars = nvars;
    params.nterms = nterms;
    params.degree_bound = degree;
    params.height = Bigint::pow2(15);
    const auto choice =
        ssi::select_params(params.mode, nvars, nterms, degree, params.height);
    params.k = choice.k;
    params.ell = choice.ell;
    params.q_range = choice.q_range;

    ssi::PrimeSampler sampler(1);
    const ssi::RunSetup setup = ssi::derive_run(params, sampler);
    std::cerr << "instance: T=" << nterms << " n=" << nvars << " D=2^" << degree_bits
              << " mu=" << setup.mu << " lambda=" << setup.lambda
              << " hardware_threads=" << std::thread::hardware_concurrency() << "\n";

    const auto reference = ssi::evaluate_images_serial(bb, setup, degree);

    double serial_best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now_seconds();
        const auto images = ssi::evaluate_images_serial(bb, setup, degree);
        const double dt = now_seconds() - t0;
        if (images != reference) {
            std::cerr << "serial evaluation mismatch\n";
            return 1;
        }
        serial_best = std::min(serial_best, dt);
    }
    std::cout << "threads\teval_s\tspeedup\n";
    std::cout << "serial\t" << serial_best << "\t1.0\n";

    for (unsigned t = 1; t <= max_threads; t *= 2) {
        double best = 1e300;
        for (int r = 0; r < reps; ++r) {
            const double t0 = now_seconds();
            const auto images = ssi::evaluate_images_parallel(bb, setup, degree, t);
            const double dt = now_seconds() - t0;
            if (images != reference) {
                std::cerr << "parallel evaluation mismatch at " << t << " threads\n";
                return 1;
            }
            best = std::min(best, dt);
        }
        std::cout << t << "\t" << best << "\t" << serial_best / best << "\n";
    }
    return 0;
}
