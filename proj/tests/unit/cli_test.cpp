#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "modanom_cli/config.hpp"
#include "modanom_cli/report.hpp"
#include "modanom_cli/runner.hpp"

using namespace modanom;
using namespace modanom::cli;

namespace {

RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "verify");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  ParseOutcome out = parse_config(static_cast<int>(argv.size()), argv.data());
  if (!out.config) throw std::runtime_error("help requested");
  return *out.config;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(MODANOM_VERIFY_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(ParseConfig, Defaults) {
  const RunConfig c = parse({});
  EXPECT_EQ(c.suite, Suite::All);
  EXPECT_EQ(c.d, 1);
  EXPECT_EQ(c.k, 1);
  EXPECT_EQ(c.a, std::vector<long>{1});
  EXPECT_EQ(c.b, std::vector<long>{1});
  EXPECT_EQ(c.q_order, 8);
  EXPECT_EQ(c.n8(), 64);
  EXPECT_DOUBLE_EQ(c.tol, 1e-8);
  EXPECT_EQ(c.format, Format::Json);
  EXPECT_EQ(c.taus.size(), 3u);
}

TEST(ParseConfig, SuiteAndGeometry) {
  const RunConfig c = parse({"--suite", "thm31", "--d", "2", "--k", "1", "--a", "2", "--b", "1"});
  EXPECT_EQ(c.suite, Suite::Thm31);
  EXPECT_EQ(c.d, 2);
  EXPECT_EQ(c.a, std::vector<long>{2});
  EXPECT_EQ(c.b, std::vector<long>{1});
}

TEST(ParseConfig, Rejections) {
  EXPECT_THROW(parse({"--a", "1,2", "--b", "2"}), UsageError);
  EXPECT_THROW(parse({"--tau", "0.1-1i"}), UsageError);
  EXPECT_THROW(parse({"--q-order", "3"}), UsageError);
  EXPECT_THROW(parse({"--suite", "everything"}), UsageError);
  EXPECT_THROW(parse({"--format", "xml"}), UsageError);
  EXPECT_THROW(parse({"--bogus"}), UsageError);
}

TEST(ParseConfig, NegativeCharges) {
  const RunConfig c = parse({"--k", "2", "--a=-1,2", "--b", "0,3"});
  EXPECT_EQ(c.a, (std::vector<long>{-1, 2}));
  EXPECT_EQ(c.b, (std::vector<long>{0, 3}));
}

TEST(ParseConfig, ComplexSamples) {
  EXPECT_EQ(parse_complex("0.11+1.03i"), std::complex<double>(0.11, 1.03));
  EXPECT_EQ(parse_complex("1i"), std::complex<double>(0, 1));
  EXPECT_EQ(parse_complex("i"), std::complex<double>(0, 1));
  EXPECT_EQ(parse_complex("-0.37+1.21i"), std::complex<double>(-0.37, 1.21));
  EXPECT_EQ(parse_complex("2"), std::complex<double>(2, 0));
  EXPECT_EQ(parse_complex("1e-1+2e+0i"), std::complex<double>(0.1, 2));
  const auto taus = parse_tau_list("0.11+1.03i;1i");
  ASSERT_EQ(taus.size(), 2u);
  EXPECT_EQ(taus[1], std::complex<double>(0, 1));
  EXPECT_THROW(parse_complex("abc"), UsageError);
}

TEST(ParseConfig, FileValuesYieldToFlags) {
  const auto path = std::filesystem::temp_directory_path() / "modanom_cli_test.cfg";
  {
    std::ofstream f(path);
    f << "suite = thm41\nd = 2\na = 2\nb = 1\ntol = 1e-7\n";
  }
  const RunConfig c = parse({"--config", path.string(), "--d", "1"});
  EXPECT_EQ(c.suite, Suite::Thm41);
  EXPECT_EQ(c.d, 1);
  EXPECT_EQ(c.a, std::vector<long>{2});
  EXPECT_DOUBLE_EQ(c.tol, 1e-7);
  std::filesystem::remove(path);
}

TEST(RunSuite, FoundationsPass) {
  RunConfig c;
  c.suite = Suite::Foundations;
  const Report r = run_suite(c);
  EXPECT_EQ(exit_code(r), kExitOk);
  EXPECT_EQ(r.summary.failed, 0);
  EXPECT_GE(r.summary.passed, 8);
}

TEST(RunSuite, Theorem31DefaultsPass) {
  RunConfig c;
  c.suite = Suite::Thm31;
  const Report r = run_suite(c);
  EXPECT_EQ(exit_code(r), kExitOk);
  EXPECT_TRUE(std::is_sorted(r.checks.begin(), r.checks.end(),
                             [](const CheckResult& x, const CheckResult& y) { return x.id < y.id; }));
}

TEST(RunSuite, InjectedFaultFails) {
  RunConfig c;
  c.suite = Suite::Thm31;
  c.d = 2;
  c.a = {2};
  c.inject_delta2 = true;
  EXPECT_EQ(exit_code(run_suite(c)), kExitMathFailure);
}

TEST(RunSuite, FlaggedDoesNotFail) {
  RunConfig c;
  c.suite = Suite::Agw;
  const Report r = run_suite(c);
  EXPECT_EQ(r.summary.flagged, 1);
  EXPECT_EQ(exit_code(r), kExitOk);
}

TEST(RunSuite, TailViolationSurfacesAsError) {
  RunConfig c;
  c.suite = Suite::Thm31;
  c.a = {2};
  c.q_order = 4;
  c.taus = {{0.0, 0.4}};
  const Report r = run_suite(c);
  EXPECT_GT(r.summary.errors, 0);
  EXPECT_EQ(exit_code(r), kExitInternal);
}

TEST(RunSuite, ScalarSuitesNeedKOne) {
  RunConfig c;
  c.suite = Suite::Thm41;
  c.k = 2;
  c.a = {1, 2};
  c.b = {2, 1};
  EXPECT_THROW(run_suite(c), UsageError);
}

TEST(RunSuite, DeterministicAcrossRunsAndThreads) {
  RunConfig c;
  c.d = 2;
  c.a = {2};
  const Report one = run_suite(c);
  c.jobs = 4;
  const Report two = run_suite(c);
  EXPECT_EQ(report_to_json(one)["checks"].dump(), report_to_json(two)["checks"].dump());
}

TEST(Report, SummarySchema) {
  Report r;
  CheckResult pass;
  pass.id = "x";
  pass.anchor = "Thm 3.1";
  r.checks = {pass};
  r.summary = summarize(r.checks);
  EXPECT_EQ(report_to_json(r)["summary"].dump(), R"({"failed":0,"flagged":0,"passed":1})");
  const nlohmann::json j = report_to_json(r);
  for (const char* key : {"version", "config", "checks", "summary"}) EXPECT_TRUE(j.contains(key)) << key;
  for (const char* key : {"id", "status", "exact_residual_order", "numeric_max_error", "extracted"})
    EXPECT_TRUE(j["checks"][0].contains(key)) << key;
}

TEST(Report, JsonRoundTrip) {
  RunConfig c;
  c.d = 2;
  c.a = {2};
  const Report r = run_suite(c);
  EXPECT_EQ(report_from_json(nlohmann::json::parse(report_to_json(r).dump())), r);
}

TEST(Report, RationalPayloads) {
  RunConfig c;
  c.suite = Suite::Thm31;
  c.a = {2};
  const Report r = run_suite(c);
  const auto it = std::find_if(r.checks.begin(), r.checks.end(),
                               [](const CheckResult& x) { return x.id.rfind("thm3.1", 0) == 0; });
  ASSERT_NE(it, r.checks.end());
  EXPECT_EQ(report_to_json(r)["checks"][std::distance(r.checks.begin(), it)]["extracted"]["h"][0]["u^2"], "1/4");
}

TEST(Report, MarkdownCarriesAnchors) {
  RunConfig c;
  c.suite = Suite::Thm31;
  const std::string md = render_markdown(run_suite(c));
  EXPECT_NE(md.find("Thm 3.1"), std::string::npos);
  EXPECT_NE(md.find("| id | anchor |"), std::string::npos);
}

TEST(Report, UnwritablePath) {
  EXPECT_THROW(emit_report(Report{}, Format::Json, "/nonexistent-dir/report.json"), IoError);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_binary("--suite agw"), kExitOk);
  EXPECT_EQ(run_binary("--a 1,2 --b 2"), kExitUsage);
  EXPECT_EQ(run_binary("--tau \"0.2-1i\""), kExitUsage);
  EXPECT_EQ(run_binary("--suite thm31 --d 2 --a 2 --inject-fault delta2"), kExitMathFailure);
  EXPECT_EQ(run_binary("--suite thm31 --a 2 --q-order 4 --tau 0.4i"), kExitInternal);
  EXPECT_EQ(run_binary("--suite agw --out /nonexistent-dir/r.json"), kExitIo);
}
