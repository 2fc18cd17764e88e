// homexp-bench: timings of the serial reference kernels against their
// OpenMP-parallel counterparts, with a result-equality check on each run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "homexp/graph.hpp"
#include "homexp/homcount.hpp"
#include "homexp/numeric.hpp"
#include "homexp/weighted.hpp"

namespace {

using namespace homexp;
using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& run, int repeats) {
    auto start = Clock::now();
    for (int i = 0; i < repeats; ++i) run();
    std::chrono::duration<double, std::milli> elapsed = Clock::now() - start;
    return elapsed.count() / repeats;
}

void print_row(const std::string& name, double serial_ms, double parallel_ms,
               bool equal) {
    std::printf("%-34s %10.2f %10.2f %8.2fx  %s\n", name.c_str(), serial_ms,
                parallel_ms, serial_ms / parallel_ms,
                equal ? "results equal" : "RESULTS DIFFER");
}

}  // namespace

int main() {
#if defined(_OPENMP)
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel kernels fall back to serial\n");
#endif
    std::printf("%-34s %10s %10s %9s\n", "kernel / instance", "serial ms",
                "parallel ms", "speedup");

    struct ExactCase {
        std::string name;
        SimpleGraph pattern;
        SimpleGraph target;
        int repeats;
    };
    std::vector<ExactCase> exact_cases = {
        {"hom C_11 -> K_6 (exact)", SimpleGraph::cycle(11),
         SimpleGraph::complete(6), 2},
        {"hom P_22 -> C_5 (exact)", SimpleGraph::path(22),
         SimpleGraph::cycle(5), 2},
        {"hom rand(12,d3) -> K_5 (exact)",
         SimpleGraph::random_bounded_degree(12, 3, 0.5, 7),
         SimpleGraph::complete(5), 2},
    };
    for (const ExactCase& c : exact_cases) {
        BigInt serial_value, parallel_value;
        double serial_ms = time_ms(
            [&] { serial_value = detail::hom_brute_serial(c.pattern, c.target); },
            c.repeats);
        double parallel_ms = time_ms(
            [&] {
                parallel_value = detail::hom_brute_parallel(c.pattern, c.target);
            },
            c.repeats);
        print_row(c.name, serial_ms, parallel_ms,
                  serial_value == parallel_value);
    }

    struct WeightedCase {
        std::string name;
        SimpleGraph pattern;
        WeightedGraph target;
        int repeats;
    };
    std::vector<WeightedCase> weighted_cases = {
        {"hom C_16 -> uniform K_4 (float)", SimpleGraph::cycle(16),
         WeightedGraph::uniform_complete(4), 2},
        {"hom rand(24,d3) -> hardcore (float)",
         SimpleGraph::random_bounded_degree(24, 3, 0.6, 11),
         hardcore_weighted_graph(1.5), 2},
    };
    for (const WeightedCase& c : weighted_cases) {
        double serial_value = 0.0, parallel_value = 0.0;
        double serial_ms = time_ms(
            [&] { serial_value = detail::hom_brute_serial(c.pattern, c.target); },
            c.repeats);
        double parallel_ms = time_ms(
            [&] {
                parallel_value = detail::hom_brute_parallel(c.pattern, c.target);
            },
            c.repeats);
        bool close = std::abs(serial_value - parallel_value) <=
                     1e-9 * std::abs(serial_value);
        print_row(c.name, serial_ms, parallel_ms, close);
    }
    return 0;
}
