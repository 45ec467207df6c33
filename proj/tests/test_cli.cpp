#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fracsol_cli/cli.hpp"

namespace cli = fracsol::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "fracsol");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::stringstream ss(text);
  std::string l;
  while (std::getline(ss, l)) v.push_back(l);
  return v;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fracsol_test_" + name);
}

const std::string kHeat = R"({"alpha":1,"m":0,"d":0,"A":1,"B":0,"C":0,"a":0})";

}  // namespace

TEST(CliGrid, ParsesAxes) {
  const auto axes = cli::parse_grid("x=0.5:2:4,t=1:3:3");
  ASSERT_EQ(axes.size(), 2u);
  EXPECT_EQ(axes[0].name, "x");
  EXPECT_EQ(axes[1].count, 3);
  const auto xs = cli::axis_values(axes[0], false);
  ASSERT_EQ(xs.size(), 4u);
  EXPECT_DOUBLE_EQ(xs.front(), 0.5);
  EXPECT_DOUBLE_EQ(xs[1], 1.0);
  EXPECT_DOUBLE_EQ(xs.back(), 2.0);
  const auto geo = cli::axis_values({"t", 1.0, 100.0, 3}, true);
  EXPECT_NEAR(geo[1], 10.0, 1e-12);
}

TEST(CliGrid, RejectsMalformed) {
  for (const char* bad : {"", "x=1:2", "x=1:2:0", "x=1:2:2.5", "=1:2:3", "x=a:2:3", "x=1:2:3,x=1:2:3", "x=1:2:1"}) {
    EXPECT_THROW((void)cli::parse_grid(bad), cli::InputError) << bad;
  }
  EXPECT_THROW((void)cli::axis_values({"x", 0.0, 1.0, 3}, true), cli::InputError);
}

TEST(CliFormat, ShortestRoundTrip) {
  EXPECT_EQ(cli::format_number(0.1), "0.1");
  EXPECT_EQ(cli::format_number(1.0), "1");
  EXPECT_EQ(cli::format_number(1e-300), "1e-300");
  const double x = 0.7788007830714049;
  EXPECT_EQ(std::stod(cli::format_number(x)), x);
}

TEST(CliReport, SinglePointCsv) {
  fracsol::verify::ResidualPoint p;
  p.x = 1.0;
  p.t = 2.0;
  p.lhs = 3.0;
  p.rhs = {3.0, 1e-3};
  const auto r = fracsol::verify::make_report(fracsol::verify::Method::GrunwaldLetnikov, {p});
  const auto text = cli::emit_report(r, cli::ReportFormat::Csv, 1e-3);
  const auto l = lines(text);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "x,t,lhs,rhs,abs_err,rel_err");
  EXPECT_EQ(l[1].substr(0, 12), "1,2,3,3+0.00");
}

TEST(CliReport, JsonRoundTrip) {
  std::vector<fracsol::verify::ResidualPoint> pts(3);
  pts[0].x = 0.5;
  pts[0].t = 0.25;
  pts[0].lhs = 1.0 / 3.0;
  pts[0].rhs = 1.0 / 3.0 + 1e-12;
  pts[1].x = 1.5;
  pts[1].lhs = {0.1, -0.2};
  pts[1].rhs = {0.1, -0.2000001};
  pts[2].x = 2.5;
  pts[2].lhs = 1e-30;
  pts[2].rhs = 2e-30;
  const auto r = fracsol::verify::make_report(fracsol::verify::Method::FiniteDifference, pts);
  const auto back = cli::parse_report_json(cli::emit_report(r, cli::ReportFormat::Json, 1e-6));
  EXPECT_EQ(back.method, r.method);
  EXPECT_EQ(back.max_rel_err, r.max_rel_err);
  ASSERT_EQ(back.points.size(), r.points.size());
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    EXPECT_EQ(back.points[i].x, r.points[i].x);
    EXPECT_EQ(back.points[i].t, r.points[i].t);
    EXPECT_EQ(back.points[i].lhs, r.points[i].lhs);
    EXPECT_EQ(back.points[i].rhs, r.points[i].rhs);
    EXPECT_EQ(back.points[i].abs_err, r.points[i].abs_err);
    EXPECT_EQ(back.points[i].rel_err, r.points[i].rel_err);
    EXPECT_EQ(back.points[i].excluded, r.points[i].excluded);
  }
}

TEST(CliJson, ProblemSchema) {
  const auto p = cli::diffusion_problem_from_json(nlohmann::json::parse(R"({"alpha":0.8,"m":1,"d":0,"A":1,"constants":[2,[0,1]]})"));
  EXPECT_EQ(p.alpha, 0.8);
  EXPECT_EQ(p.m, 1);
  ASSERT_EQ(p.constants.size(), 2u);
  EXPECT_EQ(p.constants[1], fracsol::Complex(0.0, 1.0));
  EXPECT_THROW((void)cli::diffusion_problem_from_json(nlohmann::json::parse(R"({"alpha":1,"m":0,"d":0,"A":1,"bogus":1})")),
               cli::InputError);
  EXPECT_THROW((void)cli::diffusion_problem_from_json(nlohmann::json::parse(R"({"alpha":1,"m":0.5,"d":0,"A":1})")),
               cli::InputError);
  const auto o = cli::ode_problem_from_json(nlohmann::json::parse(R"({"alpha":2.5,"m":1,"a_coeffs":[0.1,0.7,1]})"));
  EXPECT_EQ(o.a_coeffs.size(), 3u);
}

TEST(CliRun, SolvePdeHeatKernelGrid) {
  const auto path = temp_path("u.csv");
  const auto r = run({"solve", "pde", "--json", kHeat, "--grid", "x=0.5:2:4,t=0.5:2:4", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"branch\": \"ClosedFormExp\""), std::string::npos);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  const auto l = lines(ss.str());
  ASSERT_EQ(l.size(), 17u);
  EXPECT_EQ(l[0], "x,t,u");
  bool found = false;
  for (const auto& row : l) {
    if (row.rfind("1,1,", 0) == 0) {
      found = true;
      EXPECT_NEAR(std::stod(row.substr(4)), 0.7788008, 1e-7);
    }
  }
  EXPECT_TRUE(found);
  std::filesystem::remove(path);
}

TEST(CliRun, SolvePdeDescriptorOnly) {
  const auto r = run({"solve", "pde", "--json", R"({"alpha":0.8,"m":1,"d":0,"A":1})"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("branch"), "FoxHForm");
  EXPECT_EQ(j.at("spec").at("lower").size(), 3u);
}

TEST(CliRun, MittagLefflerAtZero) {
  const auto r = run({"eval", "ml", "--alpha", "1", "--beta", "1", "--z", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "z,re,im\n0,1,0\n");
}

TEST(CliRun, EvalFoxhAndWright) {
  const auto h = run({"eval", "foxh", "--json", R"({"m":1,"l":0,"upper":[],"lower":[[0,1]]})", "--z", "1"});
  ASSERT_EQ(h.code, 0) << h.err;
  const auto hl = lines(h.out);
  ASSERT_EQ(hl.size(), 2u);
  EXPECT_NEAR(std::stod(hl[1].substr(2)), std::exp(-1.0), 1e-10);
  const auto w = run({"eval", "wright", "--json", R"({"upper":[[1,1]],"lower":[[1,1]],"z":[0,1]})"});
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_EQ(lines(w.out).size(), 3u);
}

TEST(CliRun, Lemma1Suite) {
  const auto r = run({"identities", "--suite", "lemma1", "--n", "1000", "--seed", "7", "--tol", "1e-11"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("lemma1,1000,"), std::string::npos);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(CliRun, SameSeedSameBytes) {
  const std::vector<std::string> args = {"identities", "--suite", "le3", "--n", "50", "--seed", "11"};
  const auto a = run(args);
  const auto b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto c = run({"solve", "pde", "--json", R"({"alpha":0.8,"m":1,"d":0,"A":1})", "--grid", "x=0.8:1.5:3,t=0.8:1.5:3"});
  const auto d = run({"solve", "pde", "--json", R"({"alpha":0.8,"m":1,"d":0,"A":1})", "--grid", "x=0.8:1.5:3,t=0.8:1.5:3"});
  EXPECT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(c.out, d.out);
}

TEST(CliRun, VerifyPassAndFail) {
  const auto pass = run({"verify", "--kind", "pde", "--json", kHeat, "--grid", "x=0.5:2:5,t=0.5:2:5", "--tol", "1e-8"});
  EXPECT_EQ(pass.code, 0) << pass.err;
  EXPECT_EQ(pass.err.rfind("PASS", 0), 0u);
  const auto j = nlohmann::json::parse(pass.out);
  EXPECT_EQ(j.at("points").size(), 25u);
  const auto fail = run({"verify", "--kind", "pde-coefficients", "--json", R"({"alpha":2.5,"m":1,"d":2,"A":1,"a":2})",
                         "--d2-form", "theorem", "--tol", "1e-10"});
  EXPECT_EQ(fail.code, 2) << fail.err;
  EXPECT_EQ(fail.err.rfind("FAIL", 0), 0u);
  const auto coeffs = run({"verify", "--kind", "ode-coefficients", "--json", R"({"alpha":2.5,"m":1,"a_coeffs":[0.1,0.7,1]})",
                           "--format", "csv", "--tol", "1e-10"});
  EXPECT_EQ(coeffs.code, 0) << coeffs.err;
  EXPECT_EQ(lines(coeffs.out).size(), 61u);
}

TEST(CliRun, InputErrors) {
  EXPECT_EQ(run({"solve", "pde", "--json", "{not json"}).code, 1);
  EXPECT_EQ(run({"solve", "pde", "--json", kHeat, "--grid", "x=0:1:3,t=1:2:2"}).code, 1);
  EXPECT_EQ(run({"solve", "pde", "--json", kHeat, "--undocumented"}).code, 1);
  EXPECT_EQ(run({"solve", "pde"}).code, 1);
  EXPECT_EQ(run({"eval", "ml", "--alpha", "1"}).code, 1);
  const auto domain = run({"solve", "pde", "--json", R"({"alpha":2,"m":0,"d":0,"A":1})"});
  EXPECT_EQ(domain.code, 1);
  EXPECT_NE(domain.err.find("solver_pde"), std::string::npos) << domain.err;
  EXPECT_EQ(run({}).code, 1);
}

TEST(CliRun, HelpListsFlags) {
  const auto r = run({"verify", "--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* flag : {"--json", "--input", "--kind", "--grid", "--log-grid", "--gl-step", "--n-coeffs", "--tol",
                           "--format", "--out", "--sign", "--force-h", "--d2-form"}) {
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
  }
}
