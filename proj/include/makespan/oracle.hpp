#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "makespan/error.hpp"
#include "makespan/model.hpp"
#include "makespan/numeric.hpp"
#include "makespan/scheduler.hpp"

namespace makespan {

/// Largest m^n the exhaustive oracle accepts by default.
inline constexpr std::uint64_t kBruteForceGuard = 100'000'000;

/// Whether m^n stays within `guard`.
inline bool within_guard(std::size_t machines, std::size_t jobs, std::uint64_t guard = kBruteForceGuard) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < jobs; ++i) {
        if (total > guard / std::max<std::size_t>(machines, 1)) {
            return machines <= 1;
        }
        total *= machines;
    }
    return total <= guard;
}

namespace detail {

template <Scalar S>
struct BruteForce {
    const Instance<S> &instance;
    std::vector<std::vector<S>> time;  // time[i][j] = l_i / v_j
    std::vector<std::vector<bool>> allowed;
    std::vector<S> load_time;
    std::vector<std::size_t> current;
    std::vector<std::size_t> best;
    S best_makespan{};
    bool found = false;

    void search(std::size_t i, const S &partial) {
        const std::size_t n = instance.job_count();
        if (i == n) {
            if (!found || partial < best_makespan) {
                best_makespan = partial;
                best = current;
                found = true;
            }
            return;
        }
        for (std::size_t j = 0; j < instance.machine_count(); ++j) {
            if (!allowed[i][j]) {
                continue;
            }
            S next = load_time[j] + time[i][j];
            const S &span = next > partial ? next : partial;
            // Enumeration is lexicographic, so an equal makespan found later never wins.
            if (found && !(span < best_makespan)) {
                continue;
            }
            const S span_copy = span;
            std::swap(load_time[j], next);
            current[i] = j;
            search(i + 1, span_copy);
            std::swap(load_time[j], next);
        }
    }
};

}  // namespace detail

/**
 * @brief Exact minimum-makespan schedule by exhaustive enumeration.
 *
 * Jobs are assigned in id order, machines tried in id order, with a
 * running-makespan bound; among optimal schedules the lexicographically
 * smallest job -> machine vector is returned.
 */
template <Scalar S>
Schedule<S> brute_force_opt(const Instance<S> &instance, std::uint64_t guard = kBruteForceGuard) {
    if (!within_guard(instance.machine_count(), instance.job_count(), guard)) {
        throw SizeGuardError("instance with " + std::to_string(instance.machine_count()) + " machines and " +
                             std::to_string(instance.job_count()) + " jobs exceeds the exhaustive search guard");
    }
    if (!feasibility_check(instance)) {
        throw InfeasibleError("instance has no valid schedule");
    }
    const std::size_t n = instance.job_count();
    const std::size_t m = instance.machine_count();
    detail::BruteForce<S> bf{instance, {}, {}, std::vector<S>(m, S(0)), std::vector<std::size_t>(n, 0), {}, S(0), false};
    bf.time.assign(n, std::vector<S>(m));
    bf.allowed.assign(n, std::vector<bool>(m));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            bf.time[i][j] = instance.jobs()[i].length / instance.machines()[j].speed;
            bf.allowed[i][j] = instance.is_eligible(i, j);
        }
    }
    bf.search(0, S(0));
    if (!bf.found) {
        throw InfeasibleError("instance has no valid schedule");
    }
    return schedule_from_vector(instance, bf.best);
}

/**
 * Max of the total-work bound sum(l) / sum(v) and the per-job bound
 * l_i / (fastest eligible speed). Never exceeds the optimum.
 */
template <Scalar S>
S makespan_lower_bound(const Instance<S> &instance) {
    S total_length(0);
    S total_speed(0);
    for (const auto &job : instance.jobs()) {
        total_length += job.length;
    }
    for (const auto &machine : instance.machines()) {
        total_speed += machine.speed;
    }
    S bound = total_length / total_speed;
    for (std::size_t i = 0; i < instance.job_count(); ++i) {
        bool any = false;
        S fastest(0);
        for (std::size_t j = 0; j < instance.machine_count(); ++j) {
            if (instance.is_eligible(i, j) && (!any || instance.machines()[j].speed > fastest)) {
                fastest = instance.machines()[j].speed;
                any = true;
            }
        }
        if (!any) {
            throw InfeasibleError("job " + std::to_string(i) + " has no eligible machine");
        }
        const S per_job = instance.jobs()[i].length / fastest;
        if (per_job > bound) {
            bound = per_job;
        }
    }
    return bound;
}

// Golden-ratio predicates. phi is the positive root of x^2 = x + 1, so for
// x > 0: x <= phi exactly when x^2 <= x + 1.

template <Scalar S>
bool at_most_phi(const S &x) {
    return !(x > S(0)) || !(x * x > x + S(1));
}

template <Scalar S>
bool below_phi(const S &x) {
    return !(x > S(0)) || x * x < x + S(1);
}

/// Consecutive Fibonacci convergents (lower, upper) with lower < phi < upper; k >= 1.
inline std::pair<Rational, Rational> phi_bracket(unsigned k) {
    // F(k+1)/F(k) alternates around phi; pick the neighbouring pair.
    std::int64_t a = 1;
    std::int64_t b = 1;
    for (unsigned i = 0; i < k; ++i) {
        const std::int64_t c = a + b;
        a = b;
        b = c;
    }
    const Rational r1(b, a);
    const Rational r2(a + b, b);
    return r1 < r2 ? std::make_pair(r1, r2) : std::make_pair(r2, r1);
}

/**
 * @brief Piecewise rounding used to discretise job sizes.
 *
 * 1 on [1, phi), 3/2 on [phi, 2), floor(x) from 2 on. Satisfies
 * x / phi <= R(x) <= x for every x >= 1.
 */
template <Scalar S>
S round_r(const S &x) {
    if (x < S(1)) {
        throw DomainError("rounding is only defined for x >= 1");
    }
    if (below_phi(x)) {
        return S(1);
    }
    if (x < S(2)) {
        return S(3) / S(2);
    }
    return ScalarTraits<S>::floor(x);
}

enum class OptMethod { brute_force, lower_bound };

inline const char *opt_method_name(OptMethod m) { return m == OptMethod::brute_force ? "brute-force" : "lower-bound"; }

template <Scalar S>
struct RatioReport {
    std::string instance_id;
    Algorithm algorithm = Algorithm::lpt_fast;
    S alg_makespan{};
    S opt_value{};
    S ratio{};
    OptMethod method = OptMethod::brute_force;
};

/// Makespan of `algorithm` on the instance.
template <Scalar S>
S run_makespan(Algorithm algorithm, const Instance<S> &instance, std::uint64_t guard = kBruteForceGuard) {
    if (algorithm == Algorithm::opt) {
        return brute_force_opt(instance, guard).makespan;
    }
    return run_lpt(algorithm, instance).schedule.makespan;
}

/// Runs the scheduler and pairs it with the exact optimum when the guard allows, a lower bound otherwise.
template <Scalar S>
RatioReport<S> ratio_report(const Instance<S> &instance, Algorithm algorithm, std::string instance_id = {},
                            std::uint64_t guard = kBruteForceGuard) {
    if (!feasibility_check(instance)) {
        throw InfeasibleError("instance has no valid schedule");
    }
    RatioReport<S> report;
    report.instance_id = std::move(instance_id);
    report.algorithm = algorithm;
    report.alg_makespan = run_makespan(algorithm, instance, guard);
    if (within_guard(instance.machine_count(), instance.job_count(), guard)) {
        report.opt_value = brute_force_opt(instance, guard).makespan;
        report.method = OptMethod::brute_force;
    } else {
        report.opt_value = makespan_lower_bound(instance);
        report.method = OptMethod::lower_bound;
    }
    report.ratio = report.alg_makespan / report.opt_value;
    return report;
}

}  // namespace makespan
