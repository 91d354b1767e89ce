#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "makespan/bench.hpp"
#include "makespan/envelope.hpp"
#include "makespan/model.hpp"
#include "makespan/numeric.hpp"
#include "makespan/oracle.hpp"
#include "makespan/scheduler.hpp"
#include "makespan/sweep.hpp"

// JSON views of results. Scalars are strings: "p/q" for exact runs, shortest
// round-trip decimals for f64, so output files compare byte for byte.

namespace makespan {

using json = nlohmann::ordered_json;

template <Scalar S>
json scalar_json(const S &value) {
    return ScalarTraits<S>::to_string(value);
}

inline json counters_json(const EnvelopeCounters &c) {
    return {{"inserts", c.inserts}, {"deletes", c.deletes}, {"queries", c.queries}, {"comparisons", c.comparisons}};
}

template <Scalar S>
json trace_json(const LptTrace<S> &trace) {
    json steps = json::array();
    for (const auto &d : trace.decisions) {
        steps.push_back({{"job", d.job}, {"machine", d.machine}, {"before", scalar_json(d.before)},
                         {"after", scalar_json(d.after)}});
    }
    return steps;
}

template <Scalar S>
json schedule_json(const Schedule<S> &schedule, Algorithm algorithm) {
    json loads = json::array();
    for (const auto &l : schedule.loads) {
        loads.push_back(scalar_json(l));
    }
    return {{"algorithm", algorithm_name(algorithm)},
            {"numeric", ScalarTraits<S>::name},
            {"makespan", scalar_json(schedule.makespan)},
            {"assignment", schedule.assignment},
            {"loads", loads}};
}

template <Scalar S>
json schedule_json(const LptTrace<S> &trace, Algorithm algorithm, bool with_trace) {
    json out = schedule_json(trace.schedule, algorithm);
    if (with_trace) {
        out["trace"] = trace_json(trace);
        out["counters"] = counters_json(trace.counters);
    }
    return out;
}

template <Scalar S>
json breakpoints_json(const std::vector<Breakpoint<S>> &pieces) {
    json out = json::array();
    for (const auto &p : pieces) {
        out.push_back({{"from", p.x ? scalar_json(*p.x) : json("-inf")}, {"owner", p.owner}});
    }
    return out;
}

template <Scalar S>
json ratio_json(const RatioReport<S> &r) {
    return {{"instance", r.instance_id},       {"algorithm", algorithm_name(r.algorithm)},
            {"alg", scalar_json(r.alg_makespan)}, {"opt", scalar_json(r.opt_value)},
            {"ratio", scalar_json(r.ratio)},      {"method", opt_method_name(r.method)}};
}

inline json bench_json(const std::vector<BenchResult> &results) {
    json out = json::array();
    for (const auto &r : results) {
        out.push_back({{"algorithm", algorithm_name(r.algorithm)},
                       {"n", r.n},
                       {"m", r.m},
                       {"repetitions", r.repetitions},
                       {"seconds", r.seconds},
                       {"median_seconds", r.median_seconds},
                       {"min_seconds", r.min_seconds},
                       {"counters", counters_json(r.counters)}});
    }
    return out;
}

inline json sweep_json(const SweepResult &s) {
    json out = {{"family", gen_kind_name(s.family)},
                {"algorithm", algorithm_name(s.algorithm)},
                {"bound", s.bound.label},
                {"count", s.count},
                {"max_ratio", s.max_ratio.to_string()},
                {"max_ratio_decimal", s.max_ratio.to_double()},
                {"worst_index", s.worst_index},
                {"violations", s.violations},
                {"histogram", s.histogram},
                {"passed", s.passed()}};
    out["first_violation"] = s.first_violation ? json(*s.first_violation) : json(nullptr);
    return out;
}

}  // namespace makespan
