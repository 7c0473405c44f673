#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "cli.hpp"
#include "report.hpp"

namespace fs = std::filesystem;
using namespace psqm::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "psqm");
  std::ostringstream out;
  std::ostringstream err;
  const int code = execute(args, out, err);
  return {code, out.str(), err.str()};
}

// Runs the installed binary through the shell; returns exit status and stdout.
std::pair<int, std::string> run_binary(const std::string& args) {
  const std::string cmd = std::string(PSQM_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (pipe != nullptr && std::fgets(buf.data(), buf.size(), pipe) != nullptr) {
    out += buf.data();
  }
  const int status = pipe != nullptr ? pclose(pipe) : -1;
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const auto dir = fs::temp_directory_path() / ("psqm_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << content;
  return path;
}

const Check& find_check(const Report& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) {
      return c;
    }
  }
  throw std::runtime_error("missing check " + name);
}

}  // namespace

TEST(Report, NumberRoundsAndMapsSpecials) {
  EXPECT_EQ(number(0.1 + 0.2).get<double>(), 0.3);
  EXPECT_EQ(number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(number(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_TRUE(number(std::nan("")).is_null());
  EXPECT_EQ(canonical_dump(Json{{"b", -0.0}, {"a", 1.5}}), "{\n  \"a\": 1.5,\n  \"b\": 0\n}\n");
}

TEST(Report, RoundTripIsExact) {
  Report r;
  r.version = "1.2.3";
  r.config = {{"subcommand", "verify"}, {"k", 2}};
  r.checks.push_back(Check{.name = "x", .pass = true, .witnesses = {{"v", number(1.0 / 3.0)}}, .coverage = nullptr});
  r.checks.push_back(
      Check{.name = "y", .pass = false, .witnesses = {{"list", {1, 2}}}, .coverage = {{"exhaustive", true}}});
  r.cost = psqm::protocols::Cost{4, "qubits"};
  r.elapsed_ms = 12.5;
  const auto text = serialize(r);
  const auto back = parse_report(text);
  EXPECT_EQ(back, r);
  EXPECT_EQ(serialize(back), text);
  EXPECT_FALSE(back.all_pass());
}

TEST(Cli, VerifySum2Passes) {
  const auto res = run_cli({"verify", "--protocol", "sum2", "--k", "2"});
  ASSERT_EQ(res.code, kExitPass) << res.err;
  const auto r = parse_report(res.out);
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.cost, (psqm::protocols::Cost{2, "qubits"}));
  EXPECT_TRUE(to_json(r)["elapsed_ms"].is_null());
  for (const char* name : {"correctness", "privacy", "simulator_distinguishability", "weight_lemma_party_1",
                           "weight_lemma_party_2", "purity_bounds", "purity_upper_bound", "communication_cost"}) {
    EXPECT_TRUE(find_check(r, name).pass) << name;
  }
}

TEST(Cli, RunReportsOutputDistribution) {
  const auto res = run_cli({"run", "--protocol", "sum2", "--k", "2", "--inputs", "10,11"});
  ASSERT_EQ(res.code, kExitPass) << res.err;
  EXPECT_NE(res.out.find("(0,1)"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run_cli({"verify", "--protocol", "nope", "--k", "2"}).code, kExitConfigError);
  EXPECT_EQ(run_cli({"verify", "--protocol", "sum2"}).code, kExitConfigError);
  EXPECT_EQ(run_cli({"run", "--protocol", "dj", "--n", "4", "--inputs", "0000,0001"}).code, kExitConfigError);
  EXPECT_EQ(run_cli({"stats", "--n", "2", "--trials", "3"}).code, kExitConfigError);
  EXPECT_EQ(run_cli({"stats", "--n", "2", "--exhaustive"}).code, kExitConfigError);
  EXPECT_EQ(run_cli({"bound", "--table", "/nonexistent/table.json"}).code, kExitConfigError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitConfigError);
  EXPECT_EQ(run_cli({}).code, kExitConfigError);
  const auto bad = temp_file("bad.json", R"({"rows": ["0"], "cols": ["0"], "entries": [[2]]})");
  EXPECT_EQ(run_cli({"bound", "--table", bad.string()}).code, kExitConfigError);
  const auto junk = temp_file("junk.json", "not json");
  EXPECT_EQ(run_cli({"bound", "--table", junk.string()}).code, kExitConfigError);
}

TEST(Cli, BoundEqualityGolden) {
  const auto eq = temp_file("eq.json", R"({"rows": ["0", "1"], "cols": ["0", "1"], "entries": [[1, 0], [0, 1]]})");
  const auto res = run_cli({"bound", "--table", eq.string()});
  ASSERT_EQ(res.code, kExitPass) << res.err;
  const auto r = parse_report(res.out);
  EXPECT_EQ(find_check(r, "alpha").witnesses["value"], 1.0);
  EXPECT_EQ(find_check(r, "beta").witnesses["value"], 0.5);
  EXPECT_EQ(find_check(r, "min_entropy").witnesses["value"], 2.0);
  EXPECT_EQ(find_check(r, "lower_bound").witnesses["value"], 0.0);
  EXPECT_EQ(find_check(r, "clique_sizes").witnesses["rows"], 2);
}

TEST(Cli, BoundRefusesPartialOrDegenerate) {
  const auto dj = temp_file(
      "dj2.json",
      R"({"rows": ["00","01","10","11"], "cols": ["00","01","10","11"],
          "entries": [[1,null,null,0],[null,1,0,null],[null,0,1,null],[0,null,null,1]]})");
  const auto res = run_cli({"bound", "--table", dj.string()});
  EXPECT_EQ(res.code, kExitCheckFailed);
  const auto r = parse_report(res.out);
  EXPECT_TRUE(find_check(r, "lower_bound").witnesses["value"].is_null());
  EXPECT_EQ(find_check(r, "clique_sizes").witnesses["rows"], 2);

  const auto constant = temp_file("c.json", R"({"rows": ["0", "1"], "cols": ["0", "1"], "entries": [[0, 0], [0, 0]]})");
  EXPECT_EQ(run_cli({"bound", "--table", constant.string()}).code, kExitCheckFailed);
}

TEST(Cli, StatsExhaustive) {
  const auto res = run_cli({"stats", "--n", "1", "--exhaustive"});
  ASSERT_EQ(res.code, kExitPass) << res.err;
  const auto r = parse_report(res.out);
  EXPECT_EQ(find_check(r, "random_function_stats").witnesses["tables"], 16);
  EXPECT_EQ(find_check(r, "random_function_stats").witnesses["non_degenerate"], 10);
}

TEST(Cli, OutWritesFile) {
  const auto path = temp_file("out.json", "");
  const auto res = run_cli({"verify", "--protocol", "geq", "--k", "2", "--l", "1", "--out", path.string()});
  ASSERT_EQ(res.code, kExitPass) << res.err;
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_TRUE(parse_report(ss.str()).all_pass());
}

TEST(Cli, TimingFillsElapsed) {
  const auto res = run_cli({"verify", "--protocol", "sum2", "--k", "2", "--timing"});
  ASSERT_EQ(res.code, kExitPass);
  EXPECT_TRUE(parse_report(res.out).elapsed_ms.has_value());
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_binary("verify --protocol sum2 --k 2").first, 0);
  const auto dj = temp_file("dj2b.json",
                            R"({"rows": ["0","1"], "cols": ["0","1"], "entries": [[1,null],[null,1]]})");
  EXPECT_EQ(run_binary("bound --table " + dj.string()).first, 1);
  EXPECT_EQ(run_binary("verify --protocol sum2").first, 2);
  EXPECT_EQ(run_binary("--no-such-flag").first, 2);
}

TEST(Binary, SeededReportsAreByteIdentical) {
  const auto a = run_binary("verify --protocol dj --n 4 --budget 64 --seed 9");
  const auto b = run_binary("verify --protocol dj --n 4 --budget 64 --seed 9");
  ASSERT_EQ(a.first, 0);
  EXPECT_EQ(a.second, b.second);
  const auto c = run_binary("stats --n 2 --trials 25 --seed 3");
  const auto d = run_binary("stats --n 2 --trials 25 --seed 3");
  ASSERT_EQ(c.first, 0);
  EXPECT_EQ(c.second, d.second);
  EXPECT_NE(c.second, run_binary("stats --n 2 --trials 25 --seed 4").second);
}
