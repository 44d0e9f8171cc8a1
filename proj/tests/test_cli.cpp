#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cilie/job.hpp"
#include "cilie/report.hpp"

using namespace cilie;

namespace {

struct Run {
  int code = -1;
  std::string output;
};

Run run_cli(const std::string& args) {
  Run r;
  const std::string cmd = std::string(CILIE_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string job_path(const std::string& name) { return std::string(CILIE_JOBS_DIR) + "/" + name; }

const char* kA1 = R"({"command": "tangent", "variables": ["x", "y"], "map": ["x^2 + y^2"], "point": [0, 0]})";

}  // namespace

TEST(ValidateJob, AcceptsTheConeJob) {
  auto v = validate_job(kA1);
  EXPECT_TRUE(v.findings.empty());
  ASSERT_TRUE(v.job);
  EXPECT_EQ(v.job->command, "tangent");
  EXPECT_EQ(v.job->map.size(), 1u);
  EXPECT_EQ(*v.job->point, (Vector{0, 0}));
}

TEST(ValidateJob, NamesUndeclaredVariables) {
  auto v = validate_job(R"({"command": "tangent", "variables": ["x", "y"], "map": ["x + z"], "point": [0, 0]})");
  ASSERT_EQ(v.findings.size(), 1u);
  EXPECT_NE(v.findings[0].message.find("'z'"), std::string::npos);
  EXPECT_FALSE(v.job);
}

TEST(ValidateJob, FlagsReversedWindow) {
  auto v = validate_job(R"({"command": "fgcheck", "variables": ["x"], "map": ["x^2"], "parameters": {"window": [8, 4]}})");
  ASSERT_EQ(v.findings.size(), 1u);
  EXPECT_EQ(v.findings[0].field, "window");
}

TEST(ValidateJob, CollectsSeveralFindings) {
  auto v = validate_job(
      R"({"command": "tangent", "variables": ["x", "x", "1y"], "weights": [1], "point": [0], "parameters": {"degree": -1}})");
  EXPECT_GE(v.findings.size(), 3u);
  auto bad = validate_job("{not json");
  ASSERT_EQ(bad.findings.size(), 1u);
  EXPECT_NE(bad.findings[0].message.find("JSON"), std::string::npos);
}

TEST(ValidateJob, OverridesTakePrecedence) {
  JobOverrides o;
  o.degree = 4;
  o.order = "lex";
  auto v = validate_job(R"({"variables": ["x"], "map": ["x^2"], "parameters": {"degree": 9}})", "resolve", o);
  ASSERT_TRUE(v.job);
  EXPECT_EQ(v.job->params.degree, 4);
  EXPECT_EQ(v.job->ring->order.kind, OrderKind::lex);
  auto clash = validate_job(kA1, "resolve");
  EXPECT_EQ(clash.findings.size(), 1u);
}

TEST(ValidateJob, ReadsModulesAndDGModules) {
  auto v = validate_job(
      R"({"command": "resolve", "variables": ["x", "y"], "map": ["x^2"], "module": {"twists": [0, 1], "relations": [["x", "1"], ["y", "0"]]}})");
  ASSERT_TRUE(v.job);
  EXPECT_EQ(v.job->module.relations.cols(), 2u);
  EXPECT_EQ(v.job->module.relations(1, 0), Poly::constant(v.job->ring, 1));
  auto dg = validate_job(
      R"({"command": "minimize", "dgmodule": {"operators": 2, "degrees": [1, 0], "differential": [["0", "0"], ["chi2", "0"]]}})");
  ASSERT_TRUE(dg.job);
  EXPECT_EQ(dg.job->dg->rank(), 2u);
  EXPECT_EQ(dg.job->params.degree, 10);
}

TEST(RunJob, TangentReport) {
  auto v = validate_job(kA1);
  auto report = run_job(*v.job, "sha256:test");
  EXPECT_EQ(report["result"]["bracket"], Report::parse("[[[2, 0], [0, 2]]]"));
  EXPECT_EQ(report["checks"]["direct = snake"], true);
  const std::string text = render_text(report);
  EXPECT_NE(text.find("direct = snake: true"), std::string::npos);
  EXPECT_NE(text.find("input digest: sha256:test"), std::string::npos);
}

TEST(RunJob, RationalEntriesPrintAsFractions) {
  auto v = validate_job(R"({"command": "tangent", "variables": ["x", "y"], "map": ["x^2 - 4*y^2"], "point": ["1", "1/2"]})");
  ASSERT_TRUE(v.job);
  auto report = run_job(*v.job, "");
  EXPECT_EQ(report["result"]["jacobian"], Report::parse("[[2, -4]]"));
  EXPECT_EQ(report["result"]["g1_basis"], Report::parse("[[2, 1]]"));
  auto w = validate_job(R"({"command": "tangent", "variables": ["x", "y"], "map": ["3*x - 2*y"], "point": [0, 0]})");
  EXPECT_EQ(run_job(*w.job, "")["result"]["g1_basis"], Report::parse(R"([["2/3", 1]])"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("tangent " + job_path("a1_tangent.json")).code, 0);
  EXPECT_EQ(run_cli("tangent " + job_path("a1_offlocus.json")).code, 2);
  EXPECT_EQ(run_cli("tangent " + job_path("bad_poly.json")).code, 1);
  EXPECT_EQ(run_cli("resolve " + job_path("not_ci.json")).code, 2);
  EXPECT_EQ(run_cli("resolve " + job_path("width_cap.json")).code, 3);
  EXPECT_EQ(run_cli("resolve " + job_path("dual_numbers_resolve.json") + " --max-width 0").code, 1);
  EXPECT_EQ(run_cli("tangent " + job_path("missing.json")).code, 1);
  EXPECT_EQ(run_cli("frobnicate " + job_path("a1_tangent.json")).code, 1);
  EXPECT_EQ(run_cli("fgcheck " + job_path("hypersurface_fgcheck.json") + " --window 5-10").code, 1);
}

TEST(Cli, TangentOutput) {
  auto r = run_cli("tangent " + job_path("a1_tangent.json"));
  EXPECT_NE(r.output.find("direct = snake: true"), std::string::npos);
  auto j = run_cli("tangent " + job_path("a1_tangent.json") + " --format json");
  auto report = Report::parse(j.output);
  EXPECT_EQ(report["result"]["bracket"], Report::parse("[[[2, 0], [0, 2]]]"));
  EXPECT_EQ(report["input_digest"].get<std::string>().rfind("sha256:", 0), 0u);
}

TEST(Cli, Validate) {
  EXPECT_EQ(run_cli("validate " + job_path("a1_tangent.json")).output, "no findings\n");
  auto u = run_cli("validate " + job_path("undeclared.json"));
  EXPECT_EQ(u.code, 0);
  EXPECT_NE(u.output.find("undeclared variable 'z'"), std::string::npos);
  EXPECT_EQ(std::count(u.output.begin(), u.output.end(), '\n'), 1);
  auto w = run_cli("validate " + job_path("bad_window.json"));
  EXPECT_EQ(std::count(w.output.begin(), w.output.end(), '\n'), 1);
}

TEST(Cli, FlagsOverrideTheJob) {
  auto r = run_cli("resolve " + job_path("dual_numbers_resolve.json") + " --degree 2 --format json");
  EXPECT_EQ(Report::parse(r.output)["result"]["betti"], Report::parse("[1, 1, 1]"));
  auto f = run_cli("fgcheck " + job_path("hypersurface_fgcheck.json") + " --window 4:8 --format json");
  EXPECT_EQ(Report::parse(f.output)["result"]["verdict"]["window"], Report::parse("[4, 8]"));
  auto t = run_cli("tower " + job_path("a1_tower.json") + " --n 1 --degree 3 --format json");
  EXPECT_EQ(Report::parse(t.output)["result"]["hilbert_function"], Report::parse("[1, 2, 2, 2]"));
}
