#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "makespan/error.hpp"
#include "makespan/generate.hpp"
#include "makespan/instance_io.hpp"
#include "makespan/numeric.hpp"
#include "makespan/oracle.hpp"
#include "makespan/scheduler.hpp"

namespace makespan {

/// Upper bound a ratio sweep must respect: the golden ratio or an exact rational.
struct RatioBound {
    bool phi = true;
    Rational value;
    std::string label = "phi";

    static RatioBound golden() { return {}; }

    static RatioBound exact(const Rational &v) { return {false, v, v.to_string()}; }

    /// "phi", "4/3", "1.58", ...
    static RatioBound parse(std::string_view text) {
        if (text == "phi") {
            return golden();
        }
        try {
            RatioBound b{false, Rational::parse(text), std::string(text)};
            return b;
        } catch (const Error &e) {
            throw UsageError("invalid bound '" + std::string(text) + "'");
        }
    }

    bool admits(const Rational &ratio) const { return phi ? at_most_phi(ratio) : !(ratio > value); }
};

struct SweepOptions {
    GenKind family = GenKind::uniform_dwp;
    std::size_t count = 1000;
    std::uint64_t seed = 1;
    std::size_t max_n = 9;
    std::size_t max_m = 3;
    std::optional<Algorithm> algorithm;  // default depends on the family
    RatioBound bound;
    Rational eps{1, 10};
    unsigned threads = 0;  // 0: hardware concurrency, capped by MAKESPAN_THREADS
};

inline constexpr std::size_t kHistogramBins = 21;  // [1, 1.05), ..., [1.95, 2), [2, inf)

struct SweepResult {
    GenKind family = GenKind::uniform_dwp;
    Algorithm algorithm = Algorithm::dwp_lpt;
    RatioBound bound;
    std::size_t count = 0;
    Rational max_ratio;
    std::size_t worst_index = 0;
    std::string worst_instance;
    std::size_t violations = 0;
    std::optional<std::size_t> first_violation;
    std::string first_violation_instance;
    std::vector<std::size_t> histogram = std::vector<std::size_t>(kHistogramBins, 0);
    std::vector<RatioReport<Rational>> reports;

    bool passed() const { return violations == 0; }
};

inline Algorithm default_algorithm(GenKind family) {
    switch (family) {
        case GenKind::uniform_dwp: return Algorithm::dwp_lpt;
        case GenKind::paper_4_3: return Algorithm::lpt_restricted;
        default: return Algorithm::lpt_fast;
    }
}

inline unsigned sweep_threads(unsigned requested) {
    unsigned threads = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char *cap = std::getenv("MAKESPAN_THREADS")) {
        const long v = std::strtol(cap, nullptr, 10);
        if (v >= 1) {
            threads = std::min<unsigned>(threads, static_cast<unsigned>(v));
        }
    }
    return threads;
}

/// Exact instance of a sweep at position `index`.
inline Instance<Rational> sweep_instance(const SweepOptions &options, std::size_t index) {
    GenSpec spec = sweep_spec(options.family, options.seed, index, options.max_n, options.max_m);
    spec.eps = options.eps;
    return generate<Rational>(spec);
}

inline std::size_t histogram_bin(const Rational &ratio) {
    const double r = ratio.to_double();
    if (r < 1.0) {
        return 0;
    }
    const auto bin = static_cast<std::size_t>((r - 1.0) / 0.05);
    return std::min(bin, kHistogramBins - 1);
}

/**
 * @brief Runs ratio_report over `count` seeded instances in exact arithmetic.
 *
 * Instances are independent and split across threads; the aggregate is merged
 * in index order so the result does not depend on the thread count.
 */
inline SweepResult ratio_sweep(const SweepOptions &options) {
    if (options.count == 0 || options.max_n == 0 || options.max_m == 0) {
        throw UsageError("count, max n and max m must be at least 1");
    }
    const Algorithm algorithm = options.algorithm.value_or(default_algorithm(options.family));
    std::vector<RatioReport<Rational>> reports(options.count);
    const unsigned threads = std::min<unsigned>(sweep_threads(options.threads), static_cast<unsigned>(options.count));
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned t) {
        try {
            for (std::size_t k = t; k < options.count; k += threads) {
                reports[k] = ratio_report(sweep_instance(options, k), algorithm, std::to_string(k));
            }
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(work, t);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    SweepResult result;
    result.family = options.family;
    result.algorithm = algorithm;
    result.bound = options.bound;
    result.count = options.count;
    for (std::size_t k = 0; k < reports.size(); ++k) {
        const Rational &ratio = reports[k].ratio;
        ++result.histogram[histogram_bin(ratio)];
        if (k == 0 || ratio > result.max_ratio) {
            result.max_ratio = ratio;
            result.worst_index = k;
        }
        if (!options.bound.admits(ratio)) {
            ++result.violations;
            if (!result.first_violation) {
                result.first_violation = k;
                result.first_violation_instance = format_instance(sweep_instance(options, k));
            }
        }
    }
    result.worst_instance = format_instance(sweep_instance(options, result.worst_index));
    result.reports = std::move(reports);
    return result;
}

}  // namespace makespan
