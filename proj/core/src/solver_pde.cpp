#include "fracsol/solver_pde.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fracsol/error.hpp"
#include "fracsol/parallel.hpp"

namespace fracsol::pde {
namespace {

constexpr std::string_view kModule = "solver_pde";

std::vector<Complex> resolve_constants(const std::vector<Complex>& given, std::size_t count) {
  if (given.empty()) return std::vector<Complex>(count, Complex{1.0, 0.0});
  if (given.size() != count) {
    std::ostringstream os;
    os << "expected " << count << " free constants, got " << given.size();
    throw Error(ErrorCode::InvalidArgument, kModule, os.str());
  }
  return given;
}

std::vector<ode::LargeAlphaMember> theorem_d2_members(double alpha, int m, double K) {
  const double r = alpha + m;
  const int count = static_cast<int>(std::floor(alpha)) + 1;
  std::vector<ode::LargeAlphaMember> members;
  for (int k = 1; k <= count; ++k) {
    const double base = alpha - k;
    std::vector<wright::WrightParam> upper;
    for (int i = 1; i <= m; ++i) upper.push_back({Complex{(base + i) / r, 0.0}, 1.0});
    upper.push_back({Complex{1.0, 0.0}, 1.0});
    wright::WrightSpec spec(std::move(upper), {{Complex{alpha - 1.0, 0.0}, r}});
    members.push_back({k, std::move(spec), K, base, r});
  }
  return members;
}

PdeSolution base_solution(const DiffusionProblem& p) {
  PdeSolution sol{p, Complex{}, Complex{}, similarity_constant(p), 0.0, {}, FoxHForm{std::nullopt, 0.0}};
  sol.ansatz_exponent = (p.d - 2.0) / (p.alpha + p.m);
  if (p.d != 2.0) {
    const auto [s1, s2] = s_roots(p);
    sol.s1 = s1;
    sol.s2 = s2;
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    sol.s1 = sol.s2 = Complex{nan, nan};
  }
  return sol;
}

}  // namespace

void validate(const DiffusionProblem& p) {
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) {
    throw Error(ErrorCode::InvalidArgument, kModule, "alpha must be positive");
  }
  if (p.m < 0) throw Error(ErrorCode::InvalidArgument, kModule, "m must be a non-negative integer");
  if (!(p.A > 0.0) || !std::isfinite(p.A)) {
    throw Error(ErrorCode::InvalidArgument, kModule, "A must be positive");
  }
  if (!std::isfinite(p.d) || !std::isfinite(p.B) || !std::isfinite(p.C) || !std::isfinite(p.a)) {
    throw Error(ErrorCode::InvalidArgument, kModule, "d, B, C and a must be finite");
  }
}

double similarity_constant(const DiffusionProblem& p) {
  return p.A * p.a * p.a - p.A * p.a + p.B * p.a + p.C;
}

double discriminant(const DiffusionProblem& p) {
  const double r = 1.0 - p.B / p.A;
  return r * r - 4.0 * p.C / p.A;
}

std::pair<Complex, Complex> s_roots(const DiffusionProblem& p) {
  validate(p);
  if (p.d == 2.0) throw Error(ErrorCode::DegenerateD, kModule, "s roots are undefined for d = 2");
  const double pre = (p.alpha + p.m) / (2.0 * (2.0 - p.d));
  const Complex sq = std::sqrt(Complex{discriminant(p), 0.0});
  const double base = p.B / p.A + 2.0 * p.a - 1.0;
  return {pre * (base + sq), pre * (base - sq)};
}

Reduction similarity_reduce(const DiffusionProblem& p) {
  validate(p);
  if (p.d == 2.0) throw Error(ErrorCode::DegenerateD, kModule, "the n = 2 reduction needs d != 2");
  const double q = (p.d - 2.0) / (p.alpha + p.m);
  const double a2 = p.A * q * q;
  const double a1 = q * (p.A * q + p.B + p.A * (2.0 * p.a - 1.0));
  return {ode::OdeProblem{p.alpha, p.m, {similarity_constant(p), a1, a2}}, q};
}

double corollary_exponent(const DiffusionProblem& p, int sign) {
  const double disc = discriminant(p);
  if (disc < 0.0) throw Error(ErrorCode::ComplexDiscriminant, kModule, "square root is not real");
  return 0.5 * (2.0 * p.d - p.B / p.A - 3.0 + sign * std::sqrt(disc));
}

PdeSolution corollary_alpha1(const DiffusionProblem& problem, int sign) {
  validate(problem);
  if (problem.alpha != 1.0) {
    throw Error(ErrorCode::InvalidArgument, kModule, "the exponential form needs alpha = 1");
  }
  if (problem.d == 2.0) throw Error(ErrorCode::DegenerateD, kModule, "the exponential form needs d != 2");
  if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidArgument, kModule, "sign must be +1 or -1");
  const double disc = discriminant(problem);
  if (disc < 0.0) throw Error(ErrorCode::ComplexDiscriminant, kModule, "square root is not real");

  DiffusionProblem p = problem;
  p.a = corollary_exponent(problem, sign);
  PdeSolution sol = base_solution(p);
  sol.constants = resolve_constants(p.constants, 1);
  const double sq = sign * std::sqrt(disc);
  const double m1 = 1.0 + p.m;
  sol.repr = ClosedFormExp{sign, -0.5 * (p.B / p.A - 1.0 + sq), -(m1 / (p.d - 2.0)) * (p.d - 2.0 + sq),
                           m1 / (p.A * (p.d - 2.0) * (p.d - 2.0))};
  return sol;
}

PdeSolution solve(const DiffusionProblem& p, const SolveOptions& options) {
  validate(p);
  if (p.d == 2.0) {
    PdeSolution sol = base_solution(p);
    WrightSeriesForm form;
    form.d2 = true;
    form.form = options.d2_form;
    form.members = options.d2_form == D2Form::Derivation
                       ? ode::large_alpha_members(p.alpha, p.m, sol.K, {})
                       : theorem_d2_members(p.alpha, p.m, sol.K);
    sol.constants = resolve_constants(p.constants, form.members.size());
    sol.repr = std::move(form);
    return sol;
  }
  if (p.alpha == 2.0) {
    throw Error(ErrorCode::UnsupportedAlpha, kModule, "alpha = 2 with d != 2 is not covered");
  }
  if (p.alpha == 1.0 && !options.force_h_form && discriminant(p) >= 0.0) {
    return corollary_alpha1(p, options.corollary_sign);
  }
  PdeSolution sol = base_solution(p);
  const double q = sol.ansatz_exponent;
  const double leading = p.A * q * q;
  if (p.alpha < 2.0) {
    FoxHForm form{std::nullopt, p.A * (p.d - 2.0) * (p.d - 2.0) * std::pow(p.alpha + p.m, p.m)};
    if (sol.s1.imag() == 0.0 && sol.s2.imag() == 0.0) {
      form.spec = ode::small_alpha_spec(p.alpha, p.m, {sol.s1, sol.s2});
    }
    sol.constants = resolve_constants(p.constants, 1);
    sol.repr = std::move(form);
    return sol;
  }
  WrightSeriesForm form;
  form.members = ode::large_alpha_members(p.alpha, p.m, leading, {sol.s1, sol.s2});
  sol.constants = resolve_constants(p.constants, form.members.size());
  sol.repr = std::move(form);
  return sol;
}

double reduced_variable(const PdeSolution& sol, double x, double t) {
  return std::pow(x, sol.ansatz_exponent) * t;
}

Complex evaluate(const PdeSolution& sol, double x, double t) {
  if (!(x > 0.0) || !(t > 0.0) || !std::isfinite(x) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidArgument, kModule, "x and t must be positive and finite");
  }
  const DiffusionProblem& p = sol.problem;
  if (const auto* f = std::get_if<ClosedFormExp>(&sol.repr)) {
    const double log_u = f->x_power * std::log(x) + f->t_power * std::log(t) -
                         f->exp_coeff * std::exp((2.0 - p.d) * std::log(x) - (1.0 + p.m) * std::log(t));
    return sol.constants[0] * std::exp(log_u);
  }
  const double xa = std::pow(x, p.a);
  if (const auto* f = std::get_if<FoxHForm>(&sol.repr)) {
    if (!f->spec) {
      throw Error(ErrorCode::ComplexRoots, kModule,
                  "s1, s2 are complex; the contour evaluator needs real parameters");
    }
    const double arg = std::exp((2.0 - p.d) * std::log(x) - std::log(f->divisor) -
                                (p.alpha + p.m) * std::log(t));
    return sol.constants[0] * xa * fox_h::eval_mellin_barnes(*f->spec, arg);
  }
  const auto& form = std::get<WrightSeriesForm>(sol.repr);
  const double z = reduced_variable(sol, x, t);
  Complex total{0.0, 0.0};
  for (std::size_t i = 0; i < form.members.size(); ++i) {
    if (sol.constants[i] == Complex{}) continue;
    total += sol.constants[i] * ode::evaluate_member(form.members[i], z);
  }
  return xa * total;
}

std::vector<Complex> evaluate_grid(const PdeSolution& sol, const std::vector<SamplePoint>& points) {
  std::vector<Complex> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) { out[i] = evaluate(sol, points[i].x, points[i].t); });
  return out;
}

}  // namespace fracsol::pde
