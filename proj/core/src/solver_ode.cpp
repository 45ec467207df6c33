#include "fracsol/solver_ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracsol/error.hpp"

namespace fracsol::ode {
namespace {

constexpr std::string_view kModule = "solver_ode";

std::vector<Complex> default_constants(std::vector<Complex> given, std::size_t count) {
  if (given.empty()) return std::vector<Complex>(count, Complex{1.0, 0.0});
  if (given.size() != count) {
    std::ostringstream os;
    os << "expected " << count << " free constants, got " << given.size();
    throw Error(ErrorCode::InvalidArgument, kModule, os.str());
  }
  return given;
}

}  // namespace

void validate(const OdeProblem& p) {
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) {
    throw Error(ErrorCode::InvalidArgument, kModule, "alpha must be positive");
  }
  if (p.m < 0) throw Error(ErrorCode::InvalidArgument, kModule, "m must be a non-negative integer");
  if (p.a_coeffs.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, kModule, "need a_0 .. a_n with n >= 1");
  }
  for (double v : p.a_coeffs) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, kModule, "coefficient not finite");
  }
  if (p.a_coeffs.back() == 0.0) {
    throw Error(ErrorCode::DegenerateLeading, kModule, "leading coefficient a_n is zero");
  }
  if (!(p.a_coeffs.back() > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, kModule, "leading coefficient a_n must be positive");
  }
}

int order(const OdeProblem& p) { return static_cast<int>(p.a_coeffs.size()) - 1; }

CharacteristicPoly characteristic_poly(const OdeProblem& p) {
  validate(p);
  CharacteristicPoly out;
  out.monomials = series::characteristic_monomials(p.a_coeffs);
  out.roots = series::polynomial_roots(out.monomials);
  double norm = 0.0;
  for (double c : out.monomials) norm = std::max(norm, std::abs(c));
  for (const auto& r : out.roots) {
    Complex v{0.0, 0.0};
    for (auto it = out.monomials.rbegin(); it != out.monomials.rend(); ++it) v = v * r + *it;
    out.max_residual = std::max(out.max_residual, std::abs(v) / norm);
  }
  return out;
}

series::EulerPolynomialOperator right_side_operator(const OdeProblem& p) {
  return series::EulerPolynomialOperator(p.a_coeffs, p.m);
}

fox_h::HFunctionSpec small_alpha_spec(double alpha, int m, const std::vector<Complex>& roots) {
  const double r = alpha + m;
  std::vector<fox_h::HParam> lower;
  for (const auto& s : roots) {
    if (s.imag() != 0.0) {
      throw Error(ErrorCode::ComplexRoots, kModule,
                  "complex characteristic roots cannot enter the contour evaluator");
    }
    lower.push_back({-s.real() / r, 1.0});
  }
  for (int j = 1; j <= m; ++j) lower.push_back({static_cast<double>(j) / r, 1.0});
  const int count = static_cast<int>(lower.size());
  return fox_h::HFunctionSpec(count, 0, {{1.0, r}}, std::move(lower));
}

std::vector<LargeAlphaMember> large_alpha_members(double alpha, int m, double leading,
                                                  const std::vector<Complex>& roots) {
  const double r = alpha + m;
  const int n = static_cast<int>(roots.size());
  const double multiplier = leading * std::pow(r, m + n);
  const int count = static_cast<int>(std::floor(alpha)) + 1;
  std::vector<LargeAlphaMember> members;
  members.reserve(static_cast<std::size_t>(count));
  for (int k = 1; k <= count; ++k) {
    const double base = alpha - k;
    std::vector<wright::WrightParam> upper;
    for (const auto& s : roots) upper.push_back({(base - s) / r, 1.0});
    for (int i = 1; i <= m; ++i) upper.push_back({Complex{(base + i) / r, 0.0}, 1.0});
    upper.push_back({Complex{1.0, 0.0}, 1.0});
    wright::WrightSpec spec(std::move(upper), {{Complex{1.0 + base, 0.0}, r}});
    members.push_back({k, std::move(spec), multiplier, base, r});
  }
  return members;
}

OdeSolution solve_small_alpha(const OdeProblem& p, std::vector<Complex> constants) {
  validate(p);
  const int n = order(p);
  if (!(p.alpha < n)) {
    throw Error(ErrorCode::BranchMismatch, kModule, "H-function form needs alpha < n");
  }
  OdeSolution sol{Branch::SmallAlpha, p, characteristic_poly(p).roots,
                  default_constants(std::move(constants), 1), std::nullopt, {}};
  const double r = p.alpha + p.m;
  sol.small = SmallAlphaForm{small_alpha_spec(p.alpha, p.m, sol.roots), -r,
                             p.a_coeffs.back() * std::pow(r, p.m + n)};
  return sol;
}

OdeSolution solve_large_alpha(const OdeProblem& p, std::vector<Complex> constants) {
  validate(p);
  if (!(p.alpha > order(p))) {
    throw Error(ErrorCode::BranchMismatch, kModule, "Wright-series form needs alpha > n");
  }
  OdeSolution sol{Branch::LargeAlpha, p, characteristic_poly(p).roots, {}, std::nullopt, {}};
  sol.members = large_alpha_members(p.alpha, p.m, p.a_coeffs.back(), sol.roots);
  sol.constants = default_constants(std::move(constants), sol.members.size());
  return sol;
}

OdeSolution solve(const OdeProblem& p, std::vector<Complex> constants) {
  validate(p);
  const int n = order(p);
  if (p.alpha < n) return solve_small_alpha(p, std::move(constants));
  if (p.alpha > n) return solve_large_alpha(p, std::move(constants));
  throw Error(ErrorCode::BranchMismatch, kModule, "alpha equal to n is covered by neither branch");
}

series::FracPowerSeries member_series(const LargeAlphaMember& member, int n_terms,
                                      Complex constant) {
  return series::wright_series(member.spec, member.multiplier, member.gamma0, member.rho, n_terms,
                               constant);
}

Complex evaluate_member(const LargeAlphaMember& member, double z) {
  if (!(z > 0.0)) throw Error(ErrorCode::InvalidArgument, kModule, "z must be positive");
  const double arg = member.multiplier * std::pow(z, member.rho);
  return std::pow(z, member.gamma0) * wright::eval(member.spec, arg);
}

Complex evaluate(const OdeSolution& sol, double z) {
  if (!(z > 0.0)) throw Error(ErrorCode::InvalidArgument, kModule, "z must be positive");
  if (sol.branch == Branch::SmallAlpha) {
    const auto& f = *sol.small;
    return sol.constants[0] * fox_h::eval_mellin_barnes(f.spec, std::pow(z, f.power) / f.divisor);
  }
  Complex total{0.0, 0.0};
  for (std::size_t i = 0; i < sol.members.size(); ++i) {
    if (sol.constants[i] == Complex{}) continue;
    total += sol.constants[i] * evaluate_member(sol.members[i], z);
  }
  return total;
}

}  // namespace fracsol::ode
