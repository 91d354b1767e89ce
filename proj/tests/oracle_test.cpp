#include <gtest/gtest.h>

#include <random>

#include "makespan/generate.hpp"
#include "makespan/oracle.hpp"

using namespace makespan;
using Q = Rational;

namespace {

Instance<Q> graham() { return Instance<Q>::usp({Q(1), Q(1)}, {Q(3), Q(3), Q(2), Q(2), Q(2)}); }
Instance<Q> running_dwp() { return Instance<Q>::dwp({Q(1), Q(2)}, {Q(10), Q(4)}, {Q(6), Q(4), Q(4)}); }
Instance<Q> two_job_restricted() {
    GenSpec spec;
    spec.kind = GenKind::paper_4_3;
    return generate<Q>(spec);
}

// Independent reference: plain odometer enumeration with no pruning.
Q enumerate_opt(const Instance<Q> &inst) {
    const std::size_t n = inst.job_count();
    const std::size_t m = inst.machine_count();
    std::vector<std::size_t> to(n, 0);
    bool found = false;
    Q best;
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            ok = inst.is_eligible(i, to[i]);
        }
        if (ok) {
            std::vector<Q> load(m, Q(0));
            for (std::size_t i = 0; i < n; ++i) {
                load[to[i]] += inst.jobs()[i].length;
            }
            Q span(0);
            for (std::size_t j = 0; j < m; ++j) {
                span = std::max(span, load[j] / inst.machines()[j].speed);
            }
            if (!found || span < best) {
                best = span;
                found = true;
            }
        }
        std::size_t i = 0;
        while (i < n && ++to[i] == m) {
            to[i++] = 0;
        }
        if (i == n) {
            break;
        }
    }
    return best;
}

}  // namespace

TEST(BruteForce, Graham) { EXPECT_EQ(brute_force_opt(graham()).makespan, Q(6)); }

TEST(BruteForce, SingleMachine) {
    EXPECT_EQ(brute_force_opt(Instance<Q>::usp({Q(2)}, {Q(1), Q(2), Q(3)})).makespan, Q(3));
}

TEST(BruteForce, TwoJobRestricted) { EXPECT_EQ(brute_force_opt(two_job_restricted()).makespan, Q(101, 100)); }

TEST(BruteForce, LexicographicallySmallestOptimum) {
    // Two identical machines, two unit jobs: [0, 1] beats [1, 0].
    const auto s = brute_force_opt(Instance<Q>::usp({Q(1), Q(1)}, {Q(1), Q(1)}));
    EXPECT_EQ(s.assignment[0], (std::vector<std::size_t>{0}));
    EXPECT_EQ(s.assignment[1], (std::vector<std::size_t>{1}));
}

TEST(BruteForce, Guards) {
    EXPECT_THROW(brute_force_opt(Instance<Q>::dwp({Q(1)}, {Q(5)}, {Q(6)})), InfeasibleError);
    std::vector<Q> many(20, Q(1));
    EXPECT_THROW(brute_force_opt(Instance<Q>::usp({Q(1), Q(1), Q(1)}, many)), SizeGuardError);
    EXPECT_TRUE(within_guard(3, 16));
    EXPECT_FALSE(within_guard(3, 17));
    EXPECT_TRUE(within_guard(1, 1000));
    EXPECT_TRUE(within_guard(10, 8));
    EXPECT_FALSE(within_guard(10, 9));
}

TEST(LowerBound, Examples) {
    EXPECT_EQ(makespan_lower_bound(graham()), Q(6));
    EXPECT_EQ(makespan_lower_bound(Instance<Q>::usp({Q(2), Q(4)}, {Q(12)})), Q(3));
    EXPECT_GE(makespan_lower_bound(running_dwp()), Q(6));
}

TEST(RoundR, Cases) {
    EXPECT_EQ(round_r(Q(1)), Q(1));
    EXPECT_EQ(round_r(Q(16, 10)), Q(1));
    EXPECT_EQ(round_r(Q(162, 100)), Q(3, 2));
    EXPECT_EQ(round_r(Q(27, 10)), Q(2));
    EXPECT_EQ(round_r(Q(59, 10)), Q(5));
    EXPECT_EQ(round_r(Q(2)), Q(2));
    EXPECT_THROW(round_r(Q(99, 100)), DomainError);
    EXPECT_EQ(round_r(1.6), 1.0);
    EXPECT_EQ(round_r(1.62), 1.5);
}

TEST(Phi, ExactPredicates) {
    const auto [lo, hi] = phi_bracket(14);
    EXPECT_EQ(lo, Q(987, 610));
    EXPECT_EQ(hi, Q(1597, 987));
    EXPECT_TRUE(below_phi(lo));
    EXPECT_FALSE(at_most_phi(hi));
    EXPECT_TRUE(at_most_phi(Q(1)));
    EXPECT_TRUE(at_most_phi(Q(20100, 10201)) == false);
    for (unsigned k = 1; k < 30; ++k) {
        const auto [a, b] = phi_bracket(k);
        EXPECT_TRUE(below_phi(a));
        EXPECT_FALSE(at_most_phi(b));
    }
}

TEST(RatioReport, Examples) {
    const auto r = ratio_report(two_job_restricted(), Algorithm::lpt_restricted, "p43");
    EXPECT_EQ(r.ratio, Q(20100, 10201));
    EXPECT_EQ(r.method, OptMethod::brute_force);
    EXPECT_EQ(ratio_report(running_dwp(), Algorithm::dwp_lpt).ratio, Q(1));
    EXPECT_EQ(ratio_report(Instance<Q>::usp({Q(3)}, {Q(1), Q(7)}), Algorithm::lpt_fast).ratio, Q(1));
}

TEST(RatioReport, FallsBackToLowerBound) {
    std::vector<Q> lengths(30, Q(1));
    const auto r = ratio_report(Instance<Q>::usp({Q(1), Q(1), Q(1)}, lengths), Algorithm::lpt_fast);
    EXPECT_EQ(r.method, OptMethod::lower_bound);
    EXPECT_EQ(r.ratio, Q(1));
}

// Property: sandwich x / phi <= R(x) <= x and monotonicity on random rationals.
TEST(RoundRProperty, SandwichAndMonotone) {
    std::mt19937_64 rng(77);
    std::vector<Q> xs;
    for (int k = 0; k < 5000; ++k) {
        const std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 1000);
        xs.emplace_back(den + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(999 * den + 1)), den);
    }
    std::sort(xs.begin(), xs.end());
    Q prev(0);
    for (const Q &x : xs) {
        const Q r = round_r(x);
        EXPECT_LE(r, x);
        EXPECT_TRUE(at_most_phi(x / r)) << x;
        EXPECT_GE(r, prev);
        prev = r;
    }
}

// Property: LB <= brute force (== plain enumeration) <= every scheduler.
TEST(OracleProperty, BoundsSandwichSchedulers) {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 400; ++k) {
        GenSpec spec;
        spec.kind = k % 2 == 0 ? GenKind::uniform_dwp : GenKind::uniform_usp;
        spec.n = 1 + rng() % 7;
        spec.m = 1 + rng() % 3;
        spec.seed = rng();
        const auto inst = generate<Q>(spec);
        const auto opt = brute_force_opt(inst);
        EXPECT_TRUE(validate(inst, opt).ok());
        EXPECT_EQ(opt.makespan, enumerate_opt(inst));
        EXPECT_LE(makespan_lower_bound(inst), opt.makespan);
        EXPECT_LE(opt.makespan, dwp_lpt(inst).schedule.makespan);
        EXPECT_LE(opt.makespan, lpt_restricted(inst).schedule.makespan);
        if (inst.kind() == ProblemKind::usp) {
            EXPECT_LE(opt.makespan, lpt_naive(inst).schedule.makespan);
        }
    }
}
