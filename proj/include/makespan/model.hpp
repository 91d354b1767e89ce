#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <type_traits>
#include <vector>

#include "makespan/error.hpp"
#include "makespan/numeric.hpp"

namespace makespan {

enum class ProblemKind { usp, dwp, restricted };

inline const char *kind_name(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::usp: return "USP";
        case ProblemKind::dwp: return "DWP";
        case ProblemKind::restricted: return "RESTRICTED";
    }
    return "?";
}

/// A machine (or drone). `battery` is empty for machines without a range limit.
template <Scalar S>
struct Machine {
    std::size_t id = 0;
    S speed{};
    std::optional<S> battery;

    friend bool operator==(const Machine &, const Machine &) = default;
};

template <Scalar S>
struct Job {
    std::size_t id = 0;
    S length{};

    friend bool operator==(const Job &, const Job &) = default;
};

/**
 * @brief A scheduling instance: machines, jobs and, for the restricted kind,
 * the set of machines each job may run on.
 *
 * Construction checks the structural invariants (non-empty, positive speeds,
 * lengths and batteries, in-range eligibility ids). Feasibility is a separate
 * question answered by feasibility_check().
 */
template <Scalar S>
class Instance {
  public:
    static Instance usp(const std::vector<S> &speeds, const std::vector<S> &lengths) {
        Instance inst(ProblemKind::usp, speeds, lengths);
        return inst;
    }

    static Instance dwp(const std::vector<S> &speeds, const std::vector<S> &batteries, const std::vector<S> &lengths) {
        if (batteries.size() != speeds.size()) {
            throw UsageError("DWP instance needs one battery per drone");
        }
        Instance inst(ProblemKind::dwp, speeds, lengths);
        for (std::size_t j = 0; j < batteries.size(); ++j) {
            if (!(batteries[j] > S(0))) {
                throw UsageError("battery of drone " + std::to_string(j) + " must be positive");
            }
            inst.machines_[j].battery = batteries[j];
        }
        return inst;
    }

    static Instance restricted(const std::vector<S> &speeds, const std::vector<S> &lengths,
                               std::vector<std::vector<std::size_t>> eligibility) {
        if (eligibility.size() != lengths.size()) {
            throw UsageError("restricted instance needs one eligibility set per job");
        }
        Instance inst(ProblemKind::restricted, speeds, lengths);
        for (auto &set : eligibility) {
            std::sort(set.begin(), set.end());
            set.erase(std::unique(set.begin(), set.end()), set.end());
            if (!set.empty() && set.back() >= speeds.size()) {
                throw UsageError("eligibility references machine " + std::to_string(set.back()) + " out of range");
            }
        }
        inst.eligibility_ = std::move(eligibility);
        return inst;
    }

    ProblemKind kind() const noexcept { return kind_; }
    const std::vector<Machine<S>> &machines() const noexcept { return machines_; }
    const std::vector<Job<S>> &jobs() const noexcept { return jobs_; }
    std::size_t machine_count() const noexcept { return machines_.size(); }
    std::size_t job_count() const noexcept { return jobs_.size(); }

    /// Sorted eligible machine ids of a job; only meaningful for the restricted kind.
    const std::vector<std::size_t> &eligibility(std::size_t job) const { return eligibility_.at(job); }

    /// Whether `job` may be placed on `machine` under battery or eligibility rules.
    bool is_eligible(std::size_t job, std::size_t machine) const {
        switch (kind_) {
            case ProblemKind::usp: return true;
            case ProblemKind::dwp: return !(*machines_[machine].battery < jobs_[job].length);
            case ProblemKind::restricted:
                return std::binary_search(eligibility_[job].begin(), eligibility_[job].end(), machine);
        }
        return false;
    }

    friend bool operator==(const Instance &, const Instance &) = default;

  private:
    Instance(ProblemKind kind, const std::vector<S> &speeds, const std::vector<S> &lengths) : kind_(kind) {
        if (speeds.empty()) {
            throw UsageError("instance needs at least one machine");
        }
        if (lengths.empty()) {
            throw UsageError("instance needs at least one job");
        }
        machines_.reserve(speeds.size());
        for (std::size_t j = 0; j < speeds.size(); ++j) {
            if (!(speeds[j] > S(0))) {
                throw UsageError("speed of machine " + std::to_string(j) + " must be positive");
            }
            machines_.push_back(Machine<S>{j, speeds[j], std::nullopt});
        }
        jobs_.reserve(lengths.size());
        for (std::size_t i = 0; i < lengths.size(); ++i) {
            if (!(lengths[i] > S(0))) {
                throw UsageError("length of job " + std::to_string(i) + " must be positive");
            }
            jobs_.push_back(Job<S>{i, lengths[i]});
        }
    }

    ProblemKind kind_;
    std::vector<Machine<S>> machines_;
    std::vector<Job<S>> jobs_;
    std::vector<std::vector<std::size_t>> eligibility_;
};

/// Per-machine job lists (in assignment order) with loads and makespan.
template <Scalar S>
struct Schedule {
    std::vector<std::vector<std::size_t>> assignment;
    std::vector<S> loads;
    S makespan{};

    friend bool operator==(const Schedule &, const Schedule &) = default;
};

/// Builds a schedule from an assignment, computing loads and makespan.
template <Scalar S>
Schedule<S> make_schedule(const Instance<S> &instance, std::vector<std::vector<std::size_t>> assignment) {
    if (assignment.size() != instance.machine_count()) {
        throw StructuralError("assignment has " + std::to_string(assignment.size()) + " machines, instance has " +
                              std::to_string(instance.machine_count()));
    }
    Schedule<S> schedule;
    schedule.loads.assign(instance.machine_count(), S(0));
    for (std::size_t j = 0; j < assignment.size(); ++j) {
        for (const std::size_t job : assignment[j]) {
            if (job >= instance.job_count()) {
                throw StructuralError("unknown job id " + std::to_string(job));
            }
            schedule.loads[j] += instance.jobs()[job].length;
        }
    }
    schedule.makespan = S(0);
    for (std::size_t j = 0; j < assignment.size(); ++j) {
        const S time = schedule.loads[j] / instance.machines()[j].speed;
        if (time > schedule.makespan) {
            schedule.makespan = time;
        }
    }
    schedule.assignment = std::move(assignment);
    return schedule;
}

/// Builds a schedule from a job -> machine vector.
template <Scalar S>
Schedule<S> schedule_from_vector(const Instance<S> &instance, const std::vector<std::size_t> &machine_of_job) {
    std::vector<std::vector<std::size_t>> assignment(instance.machine_count());
    for (std::size_t i = 0; i < machine_of_job.size(); ++i) {
        if (machine_of_job[i] >= instance.machine_count()) {
            throw StructuralError("unknown machine id " + std::to_string(machine_of_job[i]));
        }
        assignment[machine_of_job[i]].push_back(i);
    }
    return make_schedule(instance, std::move(assignment));
}

enum class ViolationKind { partition, battery, eligibility, load_mismatch, makespan_mismatch };

struct Violation {
    ViolationKind kind;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    std::size_t count(ViolationKind kind) const {
        return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                      [kind](const Violation &v) { return v.kind == kind; }));
    }
};

/**
 * @brief Lists every violated schedule invariant.
 *
 * Checks the partition (each job exactly once), battery and eligibility
 * constraints, and that the stored loads and makespan match a recomputation.
 * Throws StructuralError when the schedule references unknown ids.
 */
template <Scalar S>
ValidationReport validate(const Instance<S> &instance, const Schedule<S> &schedule) {
    const std::size_t m = instance.machine_count();
    const std::size_t n = instance.job_count();
    if (schedule.assignment.size() != m || schedule.loads.size() != m) {
        throw StructuralError("schedule shape does not match the instance's " + std::to_string(m) + " machines");
    }
    ValidationReport report;
    std::vector<std::size_t> seen(n, 0);
    S makespan(0);
    for (std::size_t j = 0; j < m; ++j) {
        S load(0);
        for (const std::size_t job : schedule.assignment[j]) {
            if (job >= n) {
                throw StructuralError("unknown job id " + std::to_string(job));
            }
            ++seen[job];
            load += instance.jobs()[job].length;
            if (!instance.is_eligible(job, j)) {
                const bool battery = instance.kind() == ProblemKind::dwp;
                report.violations.push_back(
                    {battery ? ViolationKind::battery : ViolationKind::eligibility,
                     "job " + std::to_string(job) + " is not allowed on machine " + std::to_string(j)});
            }
        }
        if (!(load == schedule.loads[j])) {
            report.violations.push_back({ViolationKind::load_mismatch, "machine " + std::to_string(j) + " load is " +
                                                                           to_string(schedule.loads[j]) + ", expected " +
                                                                           to_string(load)});
        }
        const S time = load / instance.machines()[j].speed;
        if (time > makespan) {
            makespan = time;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i] != 1) {
            report.violations.push_back({ViolationKind::partition, "job " + std::to_string(i) + " assigned " +
                                                                       std::to_string(seen[i]) + " times"});
        }
    }
    if (!(makespan == schedule.makespan)) {
        report.violations.push_back({ViolationKind::makespan_mismatch, "makespan is " + to_string(schedule.makespan) +
                                                                           ", expected " + to_string(makespan)});
    }
    return report;
}

/// Recomputed makespan of a valid schedule.
template <Scalar S>
S makespan(const Instance<S> &instance, const Schedule<S> &schedule) {
    const ValidationReport report = validate(instance, schedule);
    if (!report.ok()) {
        throw ValidationError("invalid schedule: " + report.violations.front().detail);
    }
    return schedule.makespan;
}

/// Linear-time check that some valid schedule exists.
template <Scalar S>
bool feasibility_check(const Instance<S> &instance) {
    switch (instance.kind()) {
        case ProblemKind::usp: return true;
        case ProblemKind::dwp: {
            S max_battery = *instance.machines().front().battery;
            for (const auto &machine : instance.machines()) {
                max_battery = std::max(max_battery, *machine.battery);
            }
            S max_length = instance.jobs().front().length;
            for (const auto &job : instance.jobs()) {
                max_length = std::max(max_length, job.length);
            }
            return !(max_battery < max_length);
        }
        case ProblemKind::restricted:
            for (std::size_t i = 0; i < instance.job_count(); ++i) {
                if (instance.eligibility(i).empty()) {
                    return false;
                }
            }
            return true;
    }
    return false;
}

/// Job ids in LPT order: non-increasing length, ascending id among equals.
template <Scalar S>
std::vector<std::size_t> lpt_job_order(const Instance<S> &instance) {
    std::vector<std::size_t> order(instance.job_count());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    const auto &jobs = instance.jobs();
    if constexpr (std::is_arithmetic_v<S>) {
        // Sorting contiguous keys avoids a cache miss per comparison on large inputs.
        std::vector<std::pair<S, std::size_t>> keyed(order.size());
        for (std::size_t i = 0; i < keyed.size(); ++i) {
            keyed[i] = {-jobs[i].length, i};
        }
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t i = 0; i < keyed.size(); ++i) {
            order[i] = keyed[i].second;
        }
        return order;
    }
    std::sort(order.begin(), order.end(), [&jobs](std::size_t a, std::size_t b) {
        if (jobs[a].length == jobs[b].length) {
            return a < b;
        }
        return jobs[a].length > jobs[b].length;
    });
    return order;
}

}  // namespace makespan
