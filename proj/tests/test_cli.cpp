#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "padfix/cli.hpp"

using namespace padfix;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args, std::optional<std::string> env_jobs = std::nullopt) {
  args.insert(args.begin(), "padfix");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err, std::move(env_jobs));
  return {code, out.str(), err.str()};
}

cli::RunConfig parse(std::vector<std::string> args, std::optional<std::string> env_jobs = std::nullopt) {
  args.insert(args.begin(), "padfix");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::parse_args(static_cast<int>(argv.size()), argv.data(), std::move(env_jobs));
}

}  // namespace

TEST(Cli, CountSingleRow) {
  const auto r = run_cli({"count", "--family", "p", "--c", "3", "--p", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "family,p,c,residue,literal,predicted,theorem,verdict\n"
            "p,3,3,0,3,3,cubic-mod-3,Match\n");
}

TEST(Cli, RationalOrbitRow) {
  const auto r = run_cli({"orbit", "--rational", "--d", "2", "--c", "-21/16", "--z0", "1/4"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "d,c,p,z0,status,preperiod,period,tail,cycle\n"
            "2,-21/16,Q,1/4,Resolved,0,2,,\"1/4,-5/4\"\n");
}

TEST(Cli, DivergentRationalOrbit) {
  const auto r = run_cli({"orbit", "--rational", "--d", "2", "--c", "1", "--z0", "1", "--cutoff-bits", "8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "d,c,p,z0,status,preperiod,period,tail,cycle\n"
            "2,1,Q,1,Divergent,0,0,\"1,2,5,26\",\n");
}

TEST(Cli, ModularOrbitOverAllResidues) {
  const auto r = run_cli({"orbit", "--d", "4", "--c", "0", "--p", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "d,c,p,z0,status,preperiod,period,tail,cycle\n"
            "4,0,5,0,Resolved,0,1,,0\n"
            "4,0,5,1,Resolved,0,1,,1\n"
            "4,0,5,2,Resolved,1,1,2,1\n"
            "4,0,5,3,Resolved,1,1,3,1\n"
            "4,0,5,4,Resolved,1,1,4,1\n");
}

TEST(Cli, FixedPoints) {
  const auto r = run_cli({"fixedpoints", "--d", "4", "--c", "0:2", "--p", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "d,p,c,count,residues\n"
            "4,5,0,2,\"0,1\"\n"
            "4,5,1,1,2\n"
            "4,5,2,1,3\n");
}

TEST(Cli, VerifyMultiplesAreAllMismatches) {
  const auto r = run_cli({"verify", "--family", "p", "--p-range", "5:97", "--c-multiples"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto json = nlohmann::ordered_json::parse(
      run_cli({"verify", "--family", "p", "--p-range", "5:97", "--c-multiples", "--format", "json"}).out);
  const auto table = table_from_json(json);
  ASSERT_EQ(table.rows.size(), 23u * 10u);
  for (const auto& row : table.rows) {
    EXPECT_EQ(std::get<std::string>(row[7]), "Mismatch");
    EXPECT_EQ(std::get<i64>(row[4]), std::get<i64>(row[1]));
    EXPECT_EQ(std::get<i64>(row[5]), 3);
  }
}

TEST(Cli, Averages) {
  const auto r = run_cli({"avg", "--family", "p-1", "--filter", "divides-c", "--mode", "literal", "--p", "5:97",
                          "--t-range", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "family,filter,mode,prime_lo,prime_hi,t_range,sample_count,sum,mean,mean_float\n"
            "p-1,divides-c,literal,5,97,5,115,230,2/1,2\n");
}

TEST(Cli, DensityAndFields) {
  auto d = run_cli({"density", "--kind", "omega", "--c", "30"});
  EXPECT_EQ(d.out,
            "kind,mode,c,numerator,denominator,pi,ratio,ratio_float\n"
            "omega,predicted,30,2,9,10,2/9,0.22222222222222221\n");
  auto f = run_cli({"fields", "--degree", "3", "--x", "16"});
  EXPECT_EQ(f.out,
            "degree,x,coefficient_bound,total,with_integer_root,without_integer_root\n"
            "3,16,8,8,1,7\n");
}

TEST(Cli, UsageErrorsNameTheFlag) {
  struct Case {
    std::vector<std::string> args;
    std::string flag;
  };
  const std::vector<Case> cases = {
      {{"count", "--family", "p-1", "--p", "3", "--c", "0"}, "--p"},
      {{"count", "--family", "x", "--p", "3", "--c", "0"}, "--family"},
      {{"count", "--p", "3", "--c", "5:1"}, "--c"},
      {{"count", "--p", "24:28", "--c", "1"}, "--p"},
      {{"count", "--p", "3", "--c", "1x"}, "--c"},
      {{"verify", "--p", "5:7"}, "--c-multiples"},
      {{"avg", "--family", "p-1", "--filter", "not-divides-c", "--mode", "predicted", "--p", "5:7"}, "--filter"},
      {{"avg", "--p", "3:7", "--t-range", "0"}, "--t-range"},
      {{"density", "--kind", "m2", "--c", "1:10"}, "--c"},
      {{"density", "--kind", "zz", "--c", "1:10"}, "--kind"},
      {{"orbit", "--d", "2", "--c", "1"}, "--p"},
      {{"orbit", "--d", "2", "--c", "1", "--p", "6"}, "--p"},
      {{"orbit", "--d", "1", "--c", "1", "--p", "5"}, "--d"},
      {{"orbit", "--d", "2", "--c", "1/0", "--z0", "1", "--rational"}, "--c"},
      {{"fields", "--degree", "1", "--x", "5"}, "--degree"},
      {{"count", "--p", "3", "--c", "1", "--jobs", "0"}, "--jobs"},
  };
  for (const auto& c : cases) {
    const auto r = run_cli(c.args);
    EXPECT_EQ(r.code, 2) << c.args[0] << " " << r.err;
    EXPECT_NE(r.err.find(c.flag), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
  }
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"bogus"}).code, 2);
}

TEST(Cli, HelpDocumentsColumns) {
  const auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("family,p,c,residue,literal,predicted,theorem,verdict"), std::string::npos);
  EXPECT_NE(r.out.find("PADFIX_JOBS"), std::string::npos);
}

TEST(Cli, JobsPrecedence) {
  EXPECT_EQ(parse({"count", "--p", "3", "--c", "1", "--jobs", "3"}, "7").workers, 3u);
  EXPECT_EQ(parse({"count", "--p", "3", "--c", "1"}, "7").workers, 7u);
  EXPECT_EQ(parse({"count", "--p", "3", "--c", "1"}).workers, default_workers());
  EXPECT_THROW(parse({"count", "--p", "3", "--c", "1"}, "zero"), cli::UsageError);
}

TEST(Cli, RangeSyntax) {
  EXPECT_EQ(cli::parse_range("--c", "-5:-1"), (cli::Range{-5, -1}));
  EXPECT_EQ(cli::parse_range("--c", "-5"), (cli::Range{-5, -5}));
  EXPECT_EQ(cli::parse_range("--c", "7"), (cli::Range{7, 7}));
  EXPECT_THROW(cli::parse_range("--c", "3:"), cli::UsageError);
  EXPECT_THROW(cli::parse_range("--c", "99999999999999999999"), cli::UsageError);
}

TEST(Cli, OutputIdenticalAcrossWorkerCounts) {
  const std::vector<std::vector<std::string>> configs = {
      {"count", "--family", "p-1", "--p", "5:61", "--c", "-40:40"},
      {"orbit", "--d", "3", "--c", "-4", "--p", "97"},
      {"density", "--kind", "n0", "--c", "3:200", "--stride", "3"},
      {"fields", "--degree", "2:7", "--x", "1:50"},
      {"avg", "--family", "p", "--filter", "not-divides-c", "--p", "3:200"},
  };
  for (auto args : configs) {
    std::string first;
    for (const char* jobs : {"1", "4", "16", "1"}) {
      auto a = args;
      a.insert(a.end(), {"--jobs", jobs});
      const auto r = run_cli(a);
      ASSERT_EQ(r.code, 0) << r.err;
      if (first.empty()) first = r.out;
      EXPECT_EQ(r.out, first) << args[0] << " jobs=" << jobs;
    }
  }
}

TEST(Cli, JsonRoundTripsTheTable) {
  const std::vector<std::vector<std::string>> configs = {
      {"count", "--family", "p-1", "--p", "5:13", "--c", "-3:3"},
      {"orbit", "--rational", "--d", "2", "--c", "-29/16", "--z0", "3/4"},
      {"density", "--kind", "omega", "--c", "3:60"},
      {"avg", "--family", "p", "--p", "3:50"},
      {"fields", "--degree", "3", "--x", "1:20"},
  };
  for (auto args : configs) {
    const auto cfg = parse(args);
    const Table expect = cli::execute(cfg);
    args.insert(args.end(), {"--format", "json"});
    const auto r = run_cli(args);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(table_from_json(nlohmann::ordered_json::parse(r.out)), expect) << args[0];
  }
}

TEST(Cli, WritesToOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "padfix_cli_test.csv";
  std::filesystem::remove(path);
  const auto r = run_cli({"count", "--c", "3", "--p", "3", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), "family,p,c,residue,literal,predicted,theorem,verdict\np,3,3,0,3,3,cubic-mod-3,Match\n");
  std::filesystem::remove(path);
}

TEST(Cli, UnwritableOutputIsInternalError) {
  const auto r = run_cli({"count", "--c", "3", "--p", "3", "--out", "/nonexistent-dir/x.csv"});
  EXPECT_EQ(r.code, 1);
}
