#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "makespan/envelope.hpp"
#include "makespan/error.hpp"
#include "makespan/generate.hpp"
#include "makespan/scheduler.hpp"

namespace makespan {

struct BenchResult {
    Algorithm algorithm = Algorithm::lpt_fast;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t repetitions = 0;
    std::vector<double> seconds;
    double median_seconds = 0;
    double min_seconds = 0;
    EnvelopeCounters counters;
};

inline double median_of(std::vector<double> values) {
    if (values.empty()) {
        return 0;
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
}

/// Instance used to time `algorithm` at size (n, m): uniform-dwp for dwp-lpt, uniform-usp otherwise.
inline Instance<double> bench_instance(Algorithm algorithm, std::size_t n, std::size_t m, std::uint64_t seed) {
    GenSpec spec;
    spec.kind = algorithm == Algorithm::dwp_lpt ? GenKind::uniform_dwp : GenKind::uniform_usp;
    spec.n = n;
    spec.m = m;
    spec.seed = seed;
    return generate<double>(spec);
}

/**
 * @brief Times an LPT variant at each (n, m) in f64 mode.
 *
 * One untimed warm-up run, then `repetitions` timed runs; counters come from
 * the last run and are deterministic for a given instance.
 */
inline std::vector<BenchResult> bench_scaling(Algorithm algorithm,
                                              const std::vector<std::pair<std::size_t, std::size_t>> &sizes,
                                              std::size_t repetitions, std::uint64_t seed = 1) {
    if (repetitions == 0) {
        throw UsageError("repetitions must be at least 1");
    }
    if (algorithm == Algorithm::opt) {
        throw UsageError("the exhaustive oracle is not benchmarked");
    }
    std::vector<BenchResult> results;
    for (const auto &[n, m] : sizes) {
        const Instance<double> instance = bench_instance(algorithm, n, m, seed);
        BenchResult result;
        result.algorithm = algorithm;
        result.n = n;
        result.m = m;
        result.repetitions = repetitions;
        result.counters = run_lpt(algorithm, instance).counters;
        for (std::size_t r = 0; r < repetitions; ++r) {
            const auto start = std::chrono::steady_clock::now();
            const LptTrace<double> trace = run_lpt(algorithm, instance);
            const auto stop = std::chrono::steady_clock::now();
            result.seconds.push_back(std::chrono::duration<double>(stop - start).count());
            result.counters = trace.counters;
        }
        result.median_seconds = median_of(result.seconds);
        result.min_seconds = *std::min_element(result.seconds.begin(), result.seconds.end());
        results.push_back(std::move(result));
    }
    return results;
}

}  // namespace makespan
