#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "fracsol_cli/cli.hpp"

namespace fracsol::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool near_nonpositive_integer(double x, double margin) {
  return x < margin && std::abs(x - std::round(x)) < margin;
}

// H-form solution family of the diffusion equation with d = 0, A = 1, B = C = a = 0.
fox_h::HFunctionSpec family_spec(double alpha, int m) {
  pde::DiffusionProblem p;
  p.alpha = alpha;
  p.m = m;
  p.d = 0.0;
  p.A = 1.0;
  const auto sol = pde::solve(p, {.force_h_form = true});
  return *std::get<pde::FoxHForm>(sol.repr).spec;
}

constexpr double kFamilyAlpha[] = {0.5, 0.8, 1.5};
constexpr int kFamilyM[] = {0, 1, 2};

void record(SuiteResult& r, double err) {
  ++r.checks;
  // NaN must fail the suite
  r.max_rel_err = std::isnan(err) ? INFINITY : std::max(r.max_rel_err, err);
}

}  // namespace

SuiteResult run_lemma1_suite(int n, std::uint64_t seed, double tol) {
  if (n < 1) throw InputError("--n must be at least 1");
  const auto start = Clock::now();
  SuiteResult r{"lemma1", 0, 0.0, tol, 0.0};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> a_dist(0.0, 5.0);
  std::uniform_int_distribution<int> m_dist(1, 5);
  std::uniform_real_distribution<double> b_dist(-3.0, 3.0);
  constexpr double margin = 1e-3;
  for (int i = 0; i < n; ++i) {
    double a = 0.0;
    double b = 0.0;
    int m = 0;
    for (;;) {
      a = 5.0 - a_dist(rng);  // (0, 5]
      m = m_dist(rng);
      b = b_dist(rng);
      bool bad = near_nonpositive_integer(1.0 + a * b, margin) ||
                 near_nonpositive_integer(1.0 + a * b + m, margin);
      for (int k = 1; k <= m && !bad; ++k) bad = near_nonpositive_integer(k / a + b, margin);
      if (!bad) break;
    }
    record(r, series::gamma_product_identity_check(a, m, b).rel_err());
  }
  r.seconds = seconds_since(start);
  return r;
}

SuiteResult run_wright_suite(double tol) {
  const auto start = Clock::now();
  SuiteResult r{"wright", 0, 0.0, tol, 0.0};
  for (int i = 0; i <= 100; ++i) {
    const double x = -5.0 + 0.1 * i;
    const double exact = std::exp(x);
    record(r, std::abs(wright::mittag_leffler(1.0, 1.0, x) - exact) / exact);
  }
  for (int i = 0; i <= 30; ++i) {
    const double x = 0.1 * i;
    const double exact = std::cosh(x);
    record(r, std::abs(wright::mittag_leffler(2.0, 1.0, x * x) - exact) / exact);
  }
  r.seconds = seconds_since(start);
  return r;
}

SuiteResult run_foxh_suite(double tol) {
  const auto start = Clock::now();
  SuiteResult r{"foxh", 0, 0.0, tol, 0.0};
  using fox_h::eval_mellin_barnes_scaled;
  using fox_h::relative_difference;
  for (double alpha : kFamilyAlpha) {
    for (int m : kFamilyM) {
      const auto spec = family_spec(alpha, m);
      const auto inverted = fox_h::invert_argument(spec);
      for (double z : {0.5, 1.0, 2.0, 5.0}) {
        const auto base = eval_mellin_barnes_scaled(spec, z);
        record(r, relative_difference(base, eval_mellin_barnes_scaled(inverted, 1.0 / z)));
        for (double k : {0.5, 2.0, 3.0}) {
          const auto scaled = eval_mellin_barnes_scaled(fox_h::power_scale(spec, k), std::pow(z, k));
          record(r, relative_difference(base, scaled.scaled_by(k)));
        }
        for (double sigma : {-1.0, 0.5, 2.0}) {
          const auto shifted = eval_mellin_barnes_scaled(fox_h::shift_by_power(spec, sigma), z);
          record(r, relative_difference(base.scaled_by(std::pow(z, sigma)), shifted));
        }
        for (int rr : {1, 2}) {
          const auto expanded = fox_h::gauss_multiplication_expand(spec, rr);
          const auto red = fox_h::gauss_multiplication_reduce(expanded, rr);
          if (!(red.spec == spec)) {
            record(r, INFINITY);
            continue;
          }
          const auto lhs = eval_mellin_barnes_scaled(expanded, z);
          const auto rhs = eval_mellin_barnes_scaled(red.spec, z * red.argument_multiplier);
          record(r, relative_difference(lhs, rhs.scaled_by(red.scale)));
        }
      }
    }
  }
  r.seconds = seconds_since(start);
  return r;
}

SuiteResult run_le3_suite(int n, std::uint64_t seed, double tol) {
  if (n < 1) throw InputError("--n must be at least 1");
  const auto start = Clock::now();
  SuiteResult r{"le3", 0, 0.0, tol, 0.0};
  std::mt19937_64 rng(seed);
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  for (int i = 0; i < n; ++i) {
    const wright::WrightSpec rl_spec({{1.0, 1.0}, {uni(0.2, 3.0), uni(0.2, 1.5)}},
                                     {{uni(0.3, 3.0), uni(0.3, 2.0)}, {uni(0.2, 3.0), uni(0.5, 2.0)}});
    const double rl_alpha = uni(0.1, 3.0);
    const double a1 = uni(0.1, 2.0);
    auto report = verify::wright_operator_identity_check(rl_spec, verify::WrightRLDerivative{rl_alpha}, a1);
    record(r, report.max_rel_err);

    const wright::WrightSpec e_spec({{uni(0.3, 3.0), uni(0.3, 1.5)}}, {{uni(0.2, 3.0), uni(0.5, 2.0)}});
    const double sign = uni(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    const verify::EulerPlusR e{uni(0.2, 3.0), uni(-2.0, 2.0), sign * uni(0.3, 2.0)};
    const double a2 = uni(0.1, 2.0);
    record(r, verify::wright_operator_identity_check(e_spec, e, a2).max_rel_err);
  }
  r.seconds = seconds_since(start);
  return r;
}

SuiteResult run_le5_suite(double tol) {
  const auto start = Clock::now();
  SuiteResult r{"le5", 0, 0.0, tol, 0.0};
  for (double alpha : kFamilyAlpha) {
    for (int m : kFamilyM) {
      const auto spec = family_spec(alpha, m);
      // keep mu * a * z^-alpha_p <= 1 on z >= 0.5, away from the exponentially small tail
      const double a = 1.0 / (fox_h::convergence_params(spec).mu * std::pow(2.0, spec.upper().back().scale));
      const std::vector<double> z = {0.5, 1.0, 2.0};
      record(r, verify::h_operator_identity_check(spec, verify::RLDerivative{alpha}, z, a).max_rel_err);
      for (int j = 0; j < spec.m(); ++j) {
        record(r, verify::h_operator_identity_check(spec, verify::EulerShift{j}, z, a).max_rel_err);
      }
    }
  }
  r.seconds = seconds_since(start);
  return r;
}

}  // namespace fracsol::cli
