#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "fracsol/error.hpp"
#include "fracsol/fox_h.hpp"
#include "fracsol/solver_ode.hpp"
#include "fracsol/solver_pde.hpp"
#include "fracsol/verify.hpp"
#include "fracsol/wright.hpp"

namespace fracsol::cli {

/// Malformed flags, JSON or grids.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitFail = 2;

/// One `name=start:stop:count` axis; endpoints inclusive.
struct GridAxis {
  std::string name;
  double start;
  double stop;
  int count;
};

/// Parses `x=a:b:n,t=c:d:k`. Throws InputError on bad syntax or count < 1.
std::vector<GridAxis> parse_grid(const std::string& text);

/// Linear or geometric samples of an axis (geometric needs positive endpoints).
std::vector<double> axis_values(const GridAxis& axis, bool log_spacing);

/// Shortest decimal that reads back to the same double.
std::string format_number(double value);

enum class ReportFormat { Csv, Json };

/// JSON: {method, tol, pass, max_rel_err, points:[{x, t, lhs, rhs, abs_err, rel_err, excluded}]};
/// complex values with a non-zero imaginary part are written as [re, im], and
/// t is null for coefficient reports.
/// CSV: header `x,t,lhs,rhs,abs_err,rel_err`; complex values as `re+imi`.
std::string emit_report(const verify::ResidualReport& report, ReportFormat format, double tol);

/// Inverse of the JSON form of emit_report.
verify::ResidualReport parse_report_json(const std::string& text);

pde::DiffusionProblem diffusion_problem_from_json(const nlohmann::json& j);
ode::OdeProblem ode_problem_from_json(const nlohmann::json& j);
fox_h::HFunctionSpec h_spec_from_json(const nlohmann::json& j);
wright::WrightSpec wright_spec_from_json(const nlohmann::json& j);

nlohmann::json describe(const pde::PdeSolution& solution);
nlohmann::json describe(const ode::OdeSolution& solution);

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  double max_rel_err = 0.0;
  double tol = 0.0;
  double seconds = 0.0;

  bool pass() const noexcept { return checks > 0 && max_rel_err < tol; }
};

/// Gamma-product identity at n seeded random (a, m, b) draws away from poles.
SuiteResult run_lemma1_suite(int n, std::uint64_t seed, double tol = 1e-11);
/// Mittag-Leffler reductions: E_{1,1}(x) = e^x on [-5, 5], E_{2,1}(x^2) = cosh x on [0, 3].
SuiteResult run_wright_suite(double tol = 1e-10);
/// Inversion, power scaling, power shift and Gauss multiplication (r = 1, 2) on
/// the H-form solution family alpha in {0.5, 0.8, 1.5}, m in {0, 1, 2}.
SuiteResult run_foxh_suite(double tol = 1e-6);
/// Wright-function operator identities at n seeded random parameter sets.
SuiteResult run_le3_suite(int n, std::uint64_t seed, double tol = 1e-10);
/// H-function operator identities on the H-form solution family.
SuiteResult run_le5_suite(double tol = 1e-3);

/// Full command line, writing to the given streams. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracsol::cli
