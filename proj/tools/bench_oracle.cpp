// Timing comparison of the serial and OpenMP oracle kernels on a fixed
// family of random rules. The serial path is the reference the tests
// compare against; this tool reports what the parallel kernels buy.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "posexp/oracle.hpp"

using namespace posexp;

namespace {

LaMatrix random_matrix(std::mt19937_64& rng, std::uint64_t m, std::size_t n) {
    LaMatrix a(Modulus(m), n);
    std::uniform_int_distribution<std::uint64_t> coeff(0, m - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::int64_t d = -1; d <= 1; ++d)
                a.at(i, j).add_term(d, coeff(rng));
    return a;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    unsigned lhat = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 6;
    unsigned cases = argc > 2 ? static_cast<unsigned>(std::atoi(argv[2])) : 64;

    std::mt19937_64 rng(7);
    std::vector<LcaRule> rules;
    for (unsigned i = 0; i < cases; ++i)
        rules.push_back(LcaRule{random_matrix(rng, 2, 2)});

    std::printf("oracle kernels: %u rules over Z/2, n=2, verify budget %u + falsify 4x16\n",
                cases, lhat);

    OracleOptions serial;
    serial.parallel = false;
    OracleOptions parallel;
    parallel.parallel = true;

    unsigned verified = 0, refuted = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (const LcaRule& r : rules) {
        if (verify_window(r, lhat, serial).verified)
            ++verified;
        if (falsify(r, 4, 16, serial).refuted())
            ++refuted;
    }
    double t_serial = seconds_since(t0);

    unsigned verified_p = 0, refuted_p = 0;
    t0 = std::chrono::steady_clock::now();
    for (const LcaRule& r : rules) {
        if (verify_window(r, lhat, parallel).verified)
            ++verified_p;
        if (falsify(r, 4, 16, parallel).refuted())
            ++refuted_p;
    }
    double t_parallel = seconds_since(t0);

    std::printf("serial:   %8.3fs  (%u verified, %u refuted)\n", t_serial, verified, refuted);
    std::printf("parallel: %8.3fs  (%u verified, %u refuted)\n", t_parallel, verified_p,
                refuted_p);
    std::printf("speedup:  %8.2fx\n", t_parallel > 0 ? t_serial / t_parallel : 0.0);
    if (verified != verified_p || refuted != refuted_p) {
        std::printf("MISMATCH between serial and parallel results\n");
        return 1;
    }
    return 0;
}
