#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "makespan/cli.hpp"

using namespace makespan;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("makespan_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string &name, const std::string &text) const {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

const char *kRunningDwp = "DWP 2 3\n1 10\n2 4\n6\n4\n4\n";

std::string slurp(const std::string &p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_F(CliTest, ScheduleDwpRational) {
    const auto in = file("dwp.txt", kRunningDwp);
    const auto r = run({"schedule", "--algo", "dwp-lpt", "--input", in, "--numeric", "rational"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["makespan"], "6");
    EXPECT_EQ(j["assignment"], json::parse("[[0],[1,2]]"));
    EXPECT_EQ(j["loads"], json::parse(R"(["6","8"])"));
    EXPECT_FALSE(j.contains("trace"));
}

TEST_F(CliTest, ScheduleOpt) {
    const auto in = file("dwp.txt", kRunningDwp);
    const auto r = run({"schedule", "--algo", "opt", "--input", in});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["makespan"], "6");
}

TEST_F(CliTest, ScheduleTraceAndFloat) {
    const auto in = file("p.txt", "RESTRICTED 2 2\n10\n10.1\n10 1 1\n10.1 2 0 1\n");
    auto r = run({"schedule", "--algo", "lpt-restricted", "--input", in, "--trace"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_EQ(j["makespan"], "201/101");
    ASSERT_EQ(j["trace"].size(), 2u);
    EXPECT_EQ(j["trace"][0]["job"], 1);
    EXPECT_EQ(j["trace"][0]["after"], "1");
    r = run({"schedule", "--algo", "lpt-restricted", "--input", in, "--numeric", "f64"});
    ASSERT_EQ(r.code, 0) << r.err;
    j = json::parse(r.out);
    EXPECT_EQ(j["numeric"], "f64");
    EXPECT_EQ(std::stod(j["makespan"].get<std::string>()), (10.0 + 10.1) / 10.1);
}

TEST_F(CliTest, ScheduleErrors) {
    auto r = run({"schedule", "--input", file("bad.txt", "DWPX 2 3\n")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("bad.txt:1:1:"), std::string::npos) << r.err;
    r = run({"schedule", "--input", file("inf.txt", "DWP 1 1\n1 5\n6\n")});
    EXPECT_EQ(r.code, 3);
    std::string big = "USP 3 20\n1\n1\n1\n";
    for (int i = 0; i < 20; ++i) {
        big += "1\n";
    }
    r = run({"schedule", "--algo", "opt", "--input", file("big.txt", big)});
    EXPECT_EQ(r.code, 4);
    r = run({"schedule", "--algo", "lpt-naive", "--input", file("dwp.txt", kRunningDwp)});
    EXPECT_EQ(r.code, 2);
    r = run({"schedule", "--input", path("missing.txt")});
    EXPECT_EQ(r.code, 2);
    r = run({"schedule", "--algo", "magic", "--input", file("dwp2.txt", kRunningDwp)});
    EXPECT_EQ(r.code, 2);
    r = run({});
    EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, VerifyTwoJobRestricted) {
    auto r = run({"verify", "--family", "paper-4.3", "--count", "1", "--bound", "1.98", "--eps", "0.1", "--witness",
                  path("w.txt")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["max_ratio"], "20100/10201");
    EXPECT_FALSE(fs::exists(path("w.txt")));
    r = run({"verify", "--family", "paper-4.3", "--count", "1", "--bound", "1.9", "--witness", path("w.txt")});
    EXPECT_EQ(r.code, 1);
    ASSERT_TRUE(fs::exists(path("w.txt")));
    const auto witness = parse_instance<Rational>(slurp(path("w.txt")));
    EXPECT_EQ(ratio_report(witness, Algorithm::lpt_restricted).ratio, Rational(20100, 10201));
}

TEST_F(CliTest, VerifyDwpSweepWithReports) {
    const auto r = run({"verify", "--family", "uniform-dwp", "--count", "300", "--bound", "phi", "--jsonl",
                        path("r.jsonl"), "--record", path("worst.txt")});
    EXPECT_EQ(r.code, 0) << r.err;
    std::istringstream lines(slurp(path("r.jsonl")));
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
        const auto j = json::parse(line);
        EXPECT_EQ(j["method"], "brute-force");
        ++n;
    }
    EXPECT_EQ(n, 300u);
    EXPECT_NO_THROW(parse_instance<Rational>(slurp(path("worst.txt"))));
}

TEST_F(CliTest, VerifyBadBound) {
    EXPECT_EQ(run({"verify", "--family", "graham-43", "--count", "1", "--bound", "abc"}).code, 2);
    EXPECT_EQ(run({"verify", "--family", "nope"}).code, 2);
}

TEST_F(CliTest, BenchWritesJson) {
    const auto r = run({"bench", "--algo", "lpt-fast", "--sizes", "1e3:1e2,2000:10", "--reps", "2", "--out",
                        path("b.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(slurp(path("b.json")));
    ASSERT_EQ(j.size(), 2u);
    EXPECT_EQ(j[0]["n"], 1000);
    EXPECT_EQ(j[0]["m"], 100);
    EXPECT_EQ(j[0]["counters"]["inserts"], 1100);
    EXPECT_EQ(j[1]["seconds"].size(), 2u);
}

TEST_F(CliTest, BenchFlagErrors) {
    EXPECT_EQ(run({"bench", "--reps", "0"}).code, 2);
    EXPECT_EQ(run({"bench", "--sizes", "10"}).code, 2);
    EXPECT_EQ(run({"bench", "--sizes", "1.5:2"}).code, 2);
    EXPECT_EQ(run({"bench", "--sizes", "0:2"}).code, 2);
    EXPECT_EQ(run({"bench", "--algo", "opt", "--sizes", "5:2"}).code, 2);
}

TEST_F(CliTest, GenCanned) {
    auto r = run({"gen", "--family", "graham-43"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "USP 2 5\n1\n1\n3\n3\n2\n2\n2\n");
    r = run({"gen", "--family", "paper-4.3", "--eps", "0.1"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "RESTRICTED 2 2\n10\n10.1\n10 1 1\n10.1 2 0 1\n");
}

TEST_F(CliTest, GenDeterministicAndRoundTrips) {
    const std::vector<std::string> args{"gen",         "--family",    "uniform-dwp", "--n", "25",
                                        "--m",         "4",           "--seed",      "9",   "--len-range",
                                        "0.5:20",      "--battery-range", "1:15"};
    const auto a = run(args);
    const auto b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    GenSpec spec;
    spec.kind = GenKind::uniform_dwp;
    spec.n = 25;
    spec.m = 4;
    spec.seed = 9;
    spec.length = parse_range("0.5:20");
    spec.battery = parse_range("1:15");
    EXPECT_EQ(parse_instance<Rational>(a.out), generate<Rational>(spec));
}

TEST_F(CliTest, GenSpecErrors) {
    EXPECT_EQ(run({"gen", "--family", "uniform-usp", "--len-range", "5:1"}).code, 2);
    EXPECT_EQ(run({"gen", "--family", "uniform-usp", "--speed-range", "x"}).code, 2);
    EXPECT_EQ(run({"gen", "--family", "uniform-usp", "--n", "0"}).code, 2);
    EXPECT_EQ(run({"gen", "--family", "paper-4.3", "--eps", "-1"}).code, 2);
    EXPECT_EQ(run({"gen"}).code, 2);
}

TEST_F(CliTest, Help) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("schedule"), std::string::npos);
}

TEST_F(CliTest, BinaryExitCodes) {
    const auto in = file("dwp.txt", kRunningDwp);
    const std::string cli = MAKESPAN_CLI_PATH;
    int status = std::system((cli + " schedule --input " + in + " > " + path("o.json")).c_str());
    EXPECT_EQ(WEXITSTATUS(status), 0);
    EXPECT_EQ(json::parse(slurp(path("o.json")))["makespan"], "6");
    status = std::system((cli + " schedule --input " + file("bad.txt", "X\n") + " 2> /dev/null").c_str());
    EXPECT_EQ(WEXITSTATUS(status), 2);
}
