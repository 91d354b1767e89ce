#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "makespan/envelope.hpp"
#include "makespan/error.hpp"
#include "makespan/model.hpp"
#include "makespan/numeric.hpp"

namespace makespan {

/// One greedy step: `job` went to `machine`, whose load-time moved from `before` to `after`.
template <Scalar S>
struct Decision {
    std::size_t job = 0;
    std::size_t machine = 0;
    S before{};
    S after{};

    friend bool operator==(const Decision &, const Decision &) = default;
};

template <Scalar S>
struct LptTrace {
    std::vector<Decision<S>> decisions;
    Schedule<S> schedule;
    /// Running maximum of the machine load-times.
    S makespan{};
    /// Machines admitted to the envelope when each decision was taken (envelope variants only).
    std::vector<std::size_t> admitted;
    /// Envelope counters; the scan variants count candidate comparisons only.
    EnvelopeCounters counters;
};

/// Same decisions and schedule; bookkeeping fields are ignored.
template <Scalar S>
bool same_trace(const LptTrace<S> &a, const LptTrace<S> &b) {
    return a.decisions == b.decisions && a.schedule == b.schedule && a.makespan == b.makespan;
}

enum class Algorithm { lpt_naive, lpt_fast, lpt_restricted, dwp_lpt, opt };

inline std::string_view algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::lpt_naive: return "lpt-naive";
        case Algorithm::lpt_fast: return "lpt-fast";
        case Algorithm::lpt_restricted: return "lpt-restricted";
        case Algorithm::dwp_lpt: return "dwp-lpt";
        case Algorithm::opt: return "opt";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view name) {
    for (Algorithm a : {Algorithm::lpt_naive, Algorithm::lpt_fast, Algorithm::lpt_restricted, Algorithm::dwp_lpt,
                        Algorithm::opt}) {
        if (algorithm_name(a) == name) {
            return a;
        }
    }
    throw UsageError("unknown algorithm '" + std::string(name) + "'");
}

namespace detail {

template <Scalar S>
std::vector<S> inverse_speeds(const Instance<S> &instance) {
    std::vector<S> inv;
    inv.reserve(instance.machine_count());
    for (const auto &machine : instance.machines()) {
        inv.push_back(S(1) / machine.speed);
    }
    return inv;
}

template <Scalar S>
LptTrace<S> finish_trace(const Instance<S> &instance, LptTrace<S> trace) {
    std::vector<std::size_t> count(instance.machine_count(), 0);
    for (const auto &d : trace.decisions) {
        ++count[d.machine];
    }
    std::vector<std::vector<std::size_t>> assignment(instance.machine_count());
    for (std::size_t j = 0; j < assignment.size(); ++j) {
        assignment[j].reserve(count[j]);
    }
    for (const auto &d : trace.decisions) {
        assignment[d.machine].push_back(d.job);
    }
    trace.schedule = make_schedule(instance, std::move(assignment));
    return trace;
}

// LPT by scanning every eligible machine per job. Tie rule: smallest finish
// value, then largest speed, then smallest machine id.
template <Scalar S>
LptTrace<S> lpt_scan(const Instance<S> &instance) {
    const std::size_t m = instance.machine_count();
    const std::vector<S> inv = inverse_speeds(instance);
    std::vector<S> load_time(m, S(0));
    LptTrace<S> trace;
    trace.decisions.reserve(instance.job_count());
    trace.makespan = S(0);
    for (const std::size_t i : lpt_job_order(instance)) {
        const S &len = instance.jobs()[i].length;
        std::size_t best = m;
        S best_value{};
        for (std::size_t j = 0; j < m; ++j) {
            if (!instance.is_eligible(i, j)) {
                continue;
            }
            S value = inv[j] * len + load_time[j];
            ++trace.counters.comparisons;
            if (best == m || value < best_value ||
                (value == best_value && instance.machines()[j].speed > instance.machines()[best].speed)) {
                best = j;
                best_value = std::move(value);
            }
        }
        if (best == m) {
            throw InfeasibleError("job " + std::to_string(i) + " has no eligible machine");
        }
        trace.decisions.push_back({i, best, load_time[best], best_value});
        load_time[best] = best_value;
        if (best_value > trace.makespan) {
            trace.makespan = best_value;
        }
    }
    return finish_trace(instance, std::move(trace));
}

// LPT over the dynamic lower envelope. Machines enter the envelope in
// non-increasing battery order as soon as they can carry the current job;
// unbounded machines are admitted before the first job.
template <Scalar S>
LptTrace<S> lpt_envelope(const Instance<S> &instance) {
    const std::size_t m = instance.machine_count();
    const auto &machines = instance.machines();
    const std::vector<S> inv = inverse_speeds(instance);

    std::vector<std::size_t> admission(m);
    std::iota(admission.begin(), admission.end(), std::size_t{0});
    std::stable_sort(admission.begin(), admission.end(), [&machines](std::size_t a, std::size_t b) {
        const auto &da = machines[a].battery;
        const auto &db = machines[b].battery;
        if (!da || !db) {
            return !da && db;
        }
        return *da > *db;
    });

    LowerEnvelope<S> envelope;
    std::vector<S> load_time(m, S(0));  // intercept of each admitted machine's line
    LptTrace<S> trace;
    trace.decisions.reserve(instance.job_count());
    trace.admitted.reserve(instance.job_count());
    trace.makespan = S(0);
    std::size_t ptr = 0;
    for (const std::size_t i : lpt_job_order(instance)) {
        const S &len = instance.jobs()[i].length;
        const std::size_t first = ptr;
        while (ptr < m && (!machines[admission[ptr]].battery || !(*machines[admission[ptr]].battery < len))) {
            ++ptr;
        }
        if (ptr != first) {
            // The envelope does not depend on insertion order; inserting a batch by
            // slope keeps neighbouring tree nodes close in memory.
            std::vector<std::size_t> batch(admission.begin() + static_cast<std::ptrdiff_t>(first),
                                           admission.begin() + static_cast<std::ptrdiff_t>(ptr));
            std::sort(batch.begin(), batch.end(), [&inv](std::size_t a, std::size_t b) {
                return inv[a] < inv[b] || (inv[a] == inv[b] && a < b);
            });
            for (const std::size_t j : batch) {
                envelope.insert(Line<S>{inv[j], S(0), j});
            }
        }
        if (envelope.empty()) {
            throw InfeasibleError("job " + std::to_string(i) + " is longer than every battery range");
        }
        const EnvelopeHit<S> hit = envelope.query_min(len);
        const std::size_t j = hit.owner;
        trace.decisions.push_back({i, j, load_time[j], hit.value});
        load_time[j] = hit.value;
        trace.admitted.push_back(ptr);
        envelope.replace(Line<S>{inv[j], hit.value, j});
        if (hit.value > trace.makespan) {
            trace.makespan = hit.value;
        }
    }
    trace.counters = envelope.counters();
    return finish_trace(instance, std::move(trace));
}

}  // namespace detail

/// LPT for uniform machines by a full scan per job, O(nm + n log n).
template <Scalar S>
LptTrace<S> lpt_naive(const Instance<S> &instance) {
    if (instance.kind() != ProblemKind::usp) {
        throw UsageError("lpt-naive expects a USP instance");
    }
    return detail::lpt_scan(instance);
}

/**
 * @brief LPT for uniform machines on the dynamic lower envelope.
 *
 * Machine j is the line x / v_j + T_j; the job of length l goes to the
 * envelope minimiser at x = l, whose line is then raised by l / v_j.
 * O((n + m)(log^2 m + log n)). Produces the same trace as lpt_naive in exact
 * arithmetic.
 */
template <Scalar S>
LptTrace<S> lpt_fast(const Instance<S> &instance) {
    if (instance.kind() != ProblemKind::usp) {
        throw UsageError("lpt-fast expects a USP instance");
    }
    return detail::lpt_envelope(instance);
}

/// LPT where each job only considers its eligible machines.
template <Scalar S>
LptTrace<S> lpt_restricted(const Instance<S> &instance) {
    return detail::lpt_scan(instance);
}

/**
 * @brief Battery-constrained LPT for the drones warehouse problem.
 *
 * Parcels in non-increasing length; drones enter the envelope in
 * non-increasing battery order once their range covers the current parcel (the
 * admission pointer only moves forward). Also accepts USP instances, where every
 * machine is admitted up front.
 */
template <Scalar S>
LptTrace<S> dwp_lpt(const Instance<S> &instance) {
    if (instance.kind() == ProblemKind::restricted) {
        throw UsageError("dwp-lpt expects a DWP or USP instance");
    }
    if (!feasibility_check(instance)) {
        throw InfeasibleError("no drone can deliver the farthest parcel");
    }
    return detail::lpt_envelope(instance);
}

template <Scalar S>
LptTrace<S> run_lpt(Algorithm algorithm, const Instance<S> &instance) {
    switch (algorithm) {
        case Algorithm::lpt_naive: return lpt_naive(instance);
        case Algorithm::lpt_fast: return lpt_fast(instance);
        case Algorithm::lpt_restricted: return lpt_restricted(instance);
        case Algorithm::dwp_lpt: return dwp_lpt(instance);
        case Algorithm::opt: break;
    }
    throw UsageError("opt is not an LPT variant");
}

}  // namespace makespan
