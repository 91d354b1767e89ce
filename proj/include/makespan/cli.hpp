#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "makespan/bench.hpp"
#include "makespan/error.hpp"
#include "makespan/generate.hpp"
#include "makespan/instance_io.hpp"
#include "makespan/json_io.hpp"
#include "makespan/oracle.hpp"
#include "makespan/scheduler.hpp"
#include "makespan/sweep.hpp"

namespace makespan::cli {

enum ExitCode : int { ok = 0, verify_failed = 1, bad_input = 2, infeasible = 3, size_guard = 4 };

struct ScheduleArgs {
    std::string algo = "dwp-lpt";
    std::string input;
    std::string numeric = "rational";
    bool trace = false;
};

struct VerifyArgs {
    std::string family = "uniform-dwp";
    std::size_t count = 1000;
    std::uint64_t seed = 1;
    std::string bound = "phi";
    std::string eps = "0.1";
    std::string algo;
    std::size_t max_n = 9;
    std::size_t max_m = 3;
    std::string witness = "witness.txt";
    std::string jsonl;
    std::string record;
};

struct BenchArgs {
    std::string algo = "lpt-fast";
    std::string sizes = "1e4:1e3";
    std::size_t reps = 3;
    std::string out;
    std::uint64_t seed = 1;
};

struct GenArgs {
    std::string family;
    std::size_t n = 10;
    std::size_t m = 3;
    std::uint64_t seed = 1;
    std::string eps = "0.1";
    std::string length = "1:100";
    std::string speed = "1:10";
    std::string battery = "1:100";
};

/// Parses "1e4:1e3,2000:10" into (n, m) pairs; each count must be a positive integer.
inline std::vector<std::pair<std::size_t, std::size_t>> parse_sizes(std::string_view text) {
    auto count = [&](std::string_view token) -> std::size_t {
        Rational v;
        try {
            v = Rational::parse(token);
        } catch (const Error &) {
            throw UsageError("bad size '" + std::string(token) + "'");
        }
        if (v.denominator() != 1 || v.sign() <= 0 || !v.numerator().fits_ulong_p()) {
            throw UsageError("size must be a positive integer, got '" + std::string(token) + "'");
        }
        return v.numerator().get_ui();
    };
    std::vector<std::pair<std::size_t, std::size_t>> sizes;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) {
            comma = text.size();
        }
        const std::string_view item = text.substr(pos, comma - pos);
        const std::size_t colon = item.find(':');
        if (colon == std::string_view::npos) {
            throw UsageError("size must be 'n:m', got '" + std::string(item) + "'");
        }
        sizes.emplace_back(count(item.substr(0, colon)), count(item.substr(colon + 1)));
        pos = comma + 1;
    }
    return sizes;
}

namespace detail {

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw UsageError("cannot write '" + path + "'");
    }
}

template <Scalar S>
json run_schedule(const std::string &text, Algorithm algorithm, bool with_trace) {
    const Instance<S> instance = parse_instance<S>(text);
    if (algorithm == Algorithm::opt) {
        return schedule_json(brute_force_opt(instance), algorithm);
    }
    return schedule_json(run_lpt(algorithm, instance), algorithm, with_trace);
}

inline std::string witness_text(const SweepResult &s, std::size_t index, const std::string &instance) {
    const RatioReport<Rational> &r = s.reports[index];
    std::ostringstream out;
    out << "# family " << gen_kind_name(s.family) << " index " << index << " algorithm "
        << algorithm_name(s.algorithm) << "\n# alg " << r.alg_makespan << " opt " << r.opt_value << " ratio "
        << r.ratio << " bound " << s.bound.label << '\n'
        << instance;
    return out.str();
}

}  // namespace detail

inline int cmd_schedule(const ScheduleArgs &args, std::ostream &out) {
    const Algorithm algorithm = parse_algorithm(args.algo);
    const std::string text = detail::read_file(args.input);
    json result;
    try {
        result = args.numeric == "f64" ? detail::run_schedule<double>(text, algorithm, args.trace)
                                       : detail::run_schedule<Rational>(text, algorithm, args.trace);
    } catch (const ParseError &e) {
        throw UsageError(args.input + ":" + e.what());
    }
    out << result.dump() << '\n';
    return ok;
}

inline int cmd_verify(const VerifyArgs &args, std::ostream &out) {
    SweepOptions options;
    options.family = parse_gen_kind(args.family);
    options.count = args.count;
    options.seed = args.seed;
    options.bound = RatioBound::parse(args.bound);
    options.eps = Rational::parse(args.eps);
    options.max_n = args.max_n;
    options.max_m = args.max_m;
    if (!args.algo.empty()) {
        options.algorithm = parse_algorithm(args.algo);
    }
    const SweepResult result = ratio_sweep(options);
    if (!args.jsonl.empty()) {
        std::ostringstream lines;
        for (const auto &r : result.reports) {
            lines << ratio_json(r).dump() << '\n';
        }
        detail::write_file(args.jsonl, lines.str());
    }
    if (!args.record.empty()) {
        detail::write_file(args.record, detail::witness_text(result, result.worst_index, result.worst_instance));
    }
    json summary = sweep_json(result);
    if (!result.passed()) {
        detail::write_file(args.witness,
                           detail::witness_text(result, *result.first_violation, result.first_violation_instance));
        summary["witness"] = args.witness;
    }
    out << summary.dump() << '\n';
    return result.passed() ? ok : verify_failed;
}

inline int cmd_bench(const BenchArgs &args, std::ostream &out) {
    if (args.reps == 0) {
        throw UsageError("--reps must be at least 1");
    }
    const auto results = bench_scaling(parse_algorithm(args.algo), parse_sizes(args.sizes), args.reps, args.seed);
    const std::string text = bench_json(results).dump(2) + '\n';
    if (args.out.empty()) {
        out << text;
    } else {
        detail::write_file(args.out, text);
    }
    return ok;
}

inline GenSpec gen_spec(const GenArgs &args) {
    GenSpec spec;
    spec.kind = parse_gen_kind(args.family);
    spec.n = args.n;
    spec.m = args.m;
    spec.seed = args.seed;
    try {
        spec.eps = Rational::parse(args.eps);
    } catch (const Error &e) {
        throw SpecError(std::string("bad eps: ") + e.what());
    }
    spec.length = parse_range(args.length);
    spec.speed = parse_range(args.speed);
    spec.battery = parse_range(args.battery);
    return spec;
}

inline int cmd_gen(const GenArgs &args, std::ostream &out) {
    out << format_instance(generate<Rational>(gen_spec(args)));
    return ok;
}

/// Maps a library error to its exit code and prints one diagnostic line.
inline int report_error(const std::exception &e, std::ostream &err) {
    err << "error: " << e.what() << '\n';
    if (dynamic_cast<const InfeasibleError *>(&e) != nullptr) {
        return infeasible;
    }
    if (dynamic_cast<const SizeGuardError *>(&e) != nullptr) {
        return size_guard;
    }
    return bad_input;
}

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Makespan scheduling on uniform machines and drones"};
    app.require_subcommand(1);
    const std::vector<std::string> algos{"lpt-naive", "lpt-fast", "lpt-restricted", "dwp-lpt", "opt"};
    const std::vector<std::string> families{"uniform-usp",           "uniform-dwp", "equal-speed",
                                            "two-class-adversarial", "paper-4.3",   "graham-43"};

    ScheduleArgs sa;
    auto *schedule = app.add_subcommand("schedule", "Schedule an instance file and print JSON");
    schedule->add_option("--algo", sa.algo)->check(CLI::IsMember(algos));
    schedule->add_option("--input", sa.input, "Instance file")->required();
    schedule->add_option("--numeric", sa.numeric)->check(CLI::IsMember({"f64", "rational"}));
    schedule->add_flag("--trace", sa.trace, "Include the greedy decisions");

    VerifyArgs va;
    auto *verify = app.add_subcommand("verify", "Sweep seeded instances and check the ratio bound");
    verify->add_option("--family", va.family)->check(CLI::IsMember(families));
    verify->add_option("--count", va.count)->check(CLI::PositiveNumber);
    verify->add_option("--seed", va.seed);
    verify->add_option("--bound", va.bound, "phi or a number such as 4/3 or 1.58");
    verify->add_option("--eps", va.eps, "paper-4.3 perturbation");
    verify->add_option("--algo", va.algo)->check(CLI::IsMember(algos));
    verify->add_option("--max-n", va.max_n)->check(CLI::PositiveNumber);
    verify->add_option("--max-m", va.max_m)->check(CLI::PositiveNumber);
    verify->add_option("--witness", va.witness, "Where a violating instance is written");
    verify->add_option("--jsonl", va.jsonl, "Write one ratio report per line");
    verify->add_option("--record", va.record, "Write the worst instance found");

    BenchArgs ba;
    auto *bench = app.add_subcommand("bench", "Time a scheduler over instance sizes");
    bench->add_option("--algo", ba.algo)->check(CLI::IsMember(algos));
    bench->add_option("--sizes", ba.sizes, "n:m pairs, comma separated");
    bench->add_option("--reps", ba.reps);
    bench->add_option("--out", ba.out, "JSON output file (stdout when omitted)");
    bench->add_option("--seed", ba.seed);

    GenArgs ga;
    auto *gen = app.add_subcommand("gen", "Print a generated instance file");
    gen->add_option("--family", ga.family)->required()->check(CLI::IsMember(families));
    gen->add_option("--n", ga.n);
    gen->add_option("--m", ga.m);
    gen->add_option("--seed", ga.seed);
    gen->add_option("--eps", ga.eps);
    gen->add_option("--len-range", ga.length);
    gen->add_option("--speed-range", ga.speed);
    gen->add_option("--battery-range", ga.battery);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return ok;
        }
        err << "error: " << e.what() << '\n';
        return bad_input;
    }

    try {
        if (*schedule) {
            return cmd_schedule(sa, out);
        }
        if (*verify) {
            return cmd_verify(va, out);
        }
        if (*bench) {
            return cmd_bench(ba, out);
        }
        return cmd_gen(ga, out);
    } catch (const std::exception &e) {
        return report_error(e, err);
    }
}

/// Same as run() with an argument vector that excludes the program name.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv{"makespan"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace makespan::cli
