// Acceptance criteria: one PASS/FAIL line each, with runtime.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "fracsol/fox_h.hpp"
#include "fracsol/solver_pde.hpp"
#include "fracsol/verify.hpp"
#include "fracsol_cli/cli.hpp"

using namespace fracsol;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

pde::DiffusionProblem problem(double alpha, int m, double d, double A, double B, double C, double a) {
  pde::DiffusionProblem p;
  p.alpha = alpha;
  p.m = m;
  p.d = d;
  p.A = A;
  p.B = B;
  p.C = C;
  p.a = a;
  return p;
}

std::vector<verify::GridPoint> square_grid(double lo, double hi, int n) {
  std::vector<verify::GridPoint> g;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g.push_back({lo + (hi - lo) * i / (n - 1), lo + (hi - lo) * j / (n - 1)});
  }
  return g;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// t^-1/2 exp(-x^2/4t) for m = 0 and t^-1 exp(-x^2/2t^2) for m = 1, both with c = 1.
Outcome corollary_case(int m) {
  const auto sol = pde::solve(problem(1, m, 0, 1, 0, 0, 0));
  if (sol.kind() != pde::ReprKind::ClosedFormExp) return {false, "not the exponential form"};
  const auto grid = square_grid(0.5, 2.0, 5);
  double shape = 0.0;
  for (const auto& g : grid) {
    const double ref = m == 0 ? std::exp(-g.x * g.x / (4 * g.t)) / std::sqrt(g.t)
                              : std::exp(-g.x * g.x / (2 * g.t * g.t)) / g.t;
    shape = std::max(shape, std::abs(pde::evaluate(sol, g.x, g.t).real() / ref - 1.0));
  }
  const auto r = verify::residual_pde(sol, grid, 1e-4);
  const bool pass = r.method == verify::Method::AnalyticExact && r.max_rel_err < 1e-8 && shape < 1e-12;
  return {pass, "max_rel_err=" + sci(r.max_rel_err) + " shape_err=" + sci(shape)};
}

Outcome ac3() {
  const auto main = verify::residual_pde_coefficients(pde::solve(problem(2.5, 1, 1, 1, 0.5, 0.1, 0)), 20);
  // a = 1 gives K = 0, so the nontrivial a = 2 (K = 2) case is checked as well
  const auto d2 = verify::residual_pde_coefficients(pde::solve(problem(2.5, 1, 2, 1, 0, 0, 1)), 20);
  const auto d2_k2 = verify::residual_pde_coefficients(pde::solve(problem(2.5, 1, 2, 1, 0, 0, 2)), 20);
  const auto theorem = verify::residual_pde_coefficients(
      pde::solve(problem(2.5, 1, 2, 1, 0, 0, 2), {.d2_form = pde::D2Form::Theorem}), 20);
  const bool pass = main.points.size() == 60 && d2.points.size() == 60 && main.max_rel_err < 1e-10 &&
                    d2.max_rel_err < 1e-10 && d2_k2.max_rel_err < 1e-10;
  return {pass, "members=" + sci(main.max_rel_err) + " d2_derivation=" + sci(d2.max_rel_err) +
                    " d2_derivation_a2=" + sci(d2_k2.max_rel_err) +
                    " d2_theorem_form_a2(recorded)=" + sci(theorem.max_rel_err)};
}

Outcome ac4() {
  const auto sol = pde::solve(problem(0.8, 1, 0, 1, 0, 0, 0));
  std::vector<verify::GridPoint> grid;
  for (double x : {0.8, 0.975, 1.15, 1.325, 1.5}) {
    for (double t : {0.8, 1.5}) grid.push_back({x, t});
  }
  const auto r = verify::residual_pde(sol, grid, 1e-4);
  return {r.points.size() == 10 && r.max_rel_err <= 1e-3, "points=10 max_rel_err=" + sci(r.max_rel_err)};
}

Outcome from_suite(const cli::SuiteResult& s) {
  return {s.pass(), "checks=" + std::to_string(s.checks) + " max_rel_err=" + sci(s.max_rel_err)};
}

Outcome ac8() {
  const fox_h::HFunctionSpec spec = *std::get<pde::FoxHForm>(pde::solve(problem(0.8, 1, 0, 1, 0, 0, 0)).repr).spec;
  double lo = INFINITY;
  double hi = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double z = 5.0 * std::pow(10.0, i / 10.0);
    const auto v = fox_h::eval_mellin_barnes_scaled(spec, z);
    const double ratio = std::exp(v.log_abs() - std::log(fox_h::asymptotic_estimate(spec, z)));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const double variation = (hi - lo) / lo;
  return {variation < 0.05, "variation=" + sci(variation)};
}

Outcome ac9() {
  std::mt19937_64 rng(20240917);
  auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    double d = uni(-3.0, 5.0);
    while (std::abs(d - 2.0) < 0.1) d = uni(-3.0, 5.0);
    const auto p = problem(uni(0.1, 3.0), static_cast<int>(uni(0.0, 4.0)), d, uni(0.2, 3.0), uni(-3.0, 3.0),
                           uni(-3.0, 3.0), uni(-2.0, 2.0));
    const auto [s1, s2] = pde::s_roots(p);
    const auto roots = ode::characteristic_poly(pde::similarity_reduce(p).ode).roots;
    if (roots.size() != 2) return {false, "wrong root count"};
    const double direct = std::max(std::abs(roots[0] - s1), std::abs(roots[1] - s2));
    const double swapped = std::max(std::abs(roots[0] - s2), std::abs(roots[1] - s1));
    worst = std::max(worst, std::min(direct, swapped) / std::max({1.0, std::abs(s1), std::abs(s2)}));
  }
  return {worst < 1e-10, "problems=200 max_err=" + sci(worst)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    double limit_seconds;  // 0 means no runtime bound
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"AC1", "heat-kernel reduction", 1.0, [] { return corollary_case(0); }},
      {"AC2", "time-weighted exponential solution", 1.0, [] { return corollary_case(1); }},
      {"AC3", "coefficient-level series verification", 1.0, ac3},
      {"AC4", "H-form Grunwald-Letnikov residual", 60.0, ac4},
      {"AC5", "gamma product identity suite", 1.0, [] { return from_suite(cli::run_lemma1_suite(1000, 7, 1e-11)); }},
      {"AC6", "Mittag-Leffler reductions", 0.0, [] { return from_suite(cli::run_wright_suite(1e-10)); }},
      {"AC7", "H-function identity suite", 0.0, [] { return from_suite(cli::run_foxh_suite(1e-6)); }},
      {"AC8", "asymptotic decay ratio", 0.0, ac8},
      {"AC9", "reduction root consistency", 0.0, ac9},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds == 0.0 || secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s %s: %s (%s, %.3fs%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                in_time ? "" : " over time limit");
  }
  return failures == 0 ? 0 : 1;
}
