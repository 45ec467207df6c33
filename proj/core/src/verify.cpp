#include "fracsol/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracsol/error.hpp"
#include "fracsol/parallel.hpp"
#include "fracsol/summation.hpp"

namespace fracsol::verify {
namespace {

constexpr std::string_view kModule = "verify";
constexpr double kLatticeTol = 1e-9;
// Relative step for spatial differences. Smaller steps lose the second
// difference to roundoff; one Richardson step removes the O(step^2) error.
constexpr double kFdRelStep = 1e-3;
// log of an H argument beyond which every solution spec here has decayed to zero
constexpr double kNegligibleLogArg = 600.0;

struct Derivatives {
  double value;
  double first;
  double second;
};

// Central differences at step delta and delta/2, combined by one Richardson step.
Derivatives central_differences(const std::function<double(double)>& f, double x, double delta) {
  const double f0 = f(x);
  auto at = [&](double d) {
    const double fp = f(x + d);
    const double fm = f(x - d);
    return std::pair{(fp - fm) / (2.0 * d), (fp - 2.0 * f0 + fm) / (d * d)};
  };
  const auto [d1, d2] = at(delta);
  const auto [h1, h2] = at(0.5 * delta);
  return {f0, (4.0 * h1 - d1) / 3.0, (4.0 * h2 - d2) / 3.0};
}

void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) throw Error(code, kModule, what);
}

struct Alignment {
  long offset;  // index shift of the series relative to the common start
};

Alignment align(const series::FracPowerSeries& s, double start, double rho) {
  const double offset = (s.gamma0() - start) / rho;
  const double rounded = std::round(offset);
  if (std::abs(offset - rounded) > kLatticeTol * std::max(1.0, std::abs(offset))) {
    std::ostringstream os;
    os << "exponent " << s.gamma0() << " is off the lattice " << start << " + " << rho << " j";
    throw Error(ErrorCode::ExponentMisalignment, kModule, os.str());
  }
  return {static_cast<long>(rounded)};
}

Complex coefficient_at(const series::FracPowerSeries& s, long index) {
  if (index < 0) return {0.0, 0.0};
  if (index >= static_cast<long>(s.size())) {
    throw Error(ErrorCode::InvalidArgument, kModule, "series too short for the requested comparison");
  }
  return s.coeffs()[static_cast<std::size_t>(index)];
}

bool is_nonpositive_integer(double v) {
  return v <= 0.5 && std::abs(v - std::round(v)) < 1e-12;
}

ResidualReport residual_closed_form(const pde::PdeSolution& sol, const pde::ClosedFormExp& f,
                                    const std::vector<GridPoint>& grid) {
  const auto& p = sol.problem;
  const double R = 2.0 - p.d;
  const double S = 1.0 + p.m;
  std::vector<ResidualPoint> pts;
  for (const auto& g : grid) {
    const Complex u = pde::evaluate(sol, g.x, g.t);
    const double xr = f.exp_coeff * std::exp(R * std::log(g.x) - S * std::log(g.t));
    const double u_t = f.t_power / g.t + S * xr / g.t;
    const double d1 = f.x_power / g.x - R * xr / g.x;
    const double d1p = -f.x_power / (g.x * g.x) - R * (R - 1.0) * xr / (g.x * g.x);
    const double d2 = d1 * d1 + d1p;
    const double space = p.A * std::pow(g.x, p.d) * d2 + p.B * std::pow(g.x, p.d - 1.0) * d1 +
                         p.C * std::pow(g.x, p.d - 2.0);
    ResidualPoint pt;
    pt.x = g.x;
    pt.t = g.t;
    pt.lhs = u * u_t;
    pt.rhs = u * (std::pow(g.t, p.m) * space);
    pts.push_back(pt);
  }
  return make_report(Method::AnalyticExact, std::move(pts));
}

ResidualReport residual_wright(const pde::PdeSolution& sol, const pde::WrightSeriesForm& form,
                               const std::vector<GridPoint>& grid) {
  const auto& p = sol.problem;
  const double q = sol.ansatz_exponent;
  std::vector<ResidualPoint> pts(grid.size());
  parallel_for(grid.size(), [&](std::size_t gi) {
    const double lx = std::log(grid[gi].x);
    const double lt = std::log(grid[gi].t);
    CompensatedSum<Complex> lhs;
    CompensatedSum<Complex> rhs;
    for (std::size_t mi = 0; mi < form.members.size(); ++mi) {
      const Complex c = sol.constants[mi];
      if (c == Complex{}) continue;
      const auto& mem = form.members[mi];
      int small_run = 0;
      for (int j = 0; j < 500; ++j) {
        const Complex coef = c * wright::term(mem.spec, mem.multiplier, j);
        const double e = mem.gamma0 + mem.rho * j;
        const double b = p.a + q * e;
        Complex lt_term{};
        Complex rt_term{};
        if (coef != Complex{}) {
          lt_term = coef * gamma::gamma_ratio(e + 1.0, e + 1.0 - p.alpha) *
                    std::exp(b * lx + (e - p.alpha) * lt);
          rt_term = coef * (p.A * b * (b - 1.0) + p.B * b + p.C) *
                    std::exp((b + p.d - 2.0) * lx + (e + p.m) * lt);
        }
        lhs.add(lt_term);
        rhs.add(rt_term);
        const bool small = std::abs(lt_term) <= 1e-17 * std::abs(lhs.value()) &&
                           std::abs(rt_term) <= 1e-17 * std::abs(rhs.value());
        small_run = (j > 3 && small) ? small_run + 1 : 0;
        if (small_run == 3) break;
      }
    }
    ResidualPoint pt;
    pt.x = grid[gi].x;
    pt.t = grid[gi].t;
    pt.lhs = lhs.value();
    pt.rhs = rhs.value();
    pts[gi] = pt;
  });
  return make_report(Method::TermwiseExact, std::move(pts));
}

ResidualReport residual_fox_h(const pde::PdeSolution& sol, const pde::FoxHForm& form,
                              const std::vector<GridPoint>& grid, double h) {
  if (!form.spec) {
    throw Error(ErrorCode::ComplexRoots, kModule, "H-function form with complex s1, s2");
  }
  const auto& p = sol.problem;
  const double r = p.alpha + p.m;
  auto log_arg = [&](double x, double t) {
    return (2.0 - p.d) * std::log(x) - std::log(form.divisor) - r * std::log(t);
  };
  double lo = kNegligibleLogArg;
  for (const auto& g : grid) {
    lo = std::min({lo, log_arg(g.x * (1.0 - 2.0 * kFdRelStep), g.t),
                   log_arg(g.x * (1.0 + 2.0 * kFdRelStep), g.t)});
  }
  const fox_h::ContourGrid hgrid(*form.spec, std::exp(lo - 1.0), 1e30);
  auto u = [&](double x, double t) {
    if (t <= 0.0) return 0.0;
    const double la = log_arg(x, t);
    if (la > kNegligibleLogArg) return 0.0;
    return std::pow(x, p.a) * hgrid(std::exp(la));
  };

  std::vector<ResidualPoint> pts(grid.size());
  parallel_for(grid.size(), [&](std::size_t gi) {
    const double x = grid[gi].x;
    const double t = grid[gi].t;
    const double lhs = gl_fractional_derivative([&](double tau) { return u(x, tau); }, p.alpha, t, h);
    const Derivatives dx = central_differences([&](double xi) { return u(xi, t); }, x, kFdRelStep * x);
    const double rhs = std::pow(t, p.m) * (p.A * std::pow(x, p.d) * dx.second +
                                           p.B * std::pow(x, p.d - 1.0) * dx.first +
                                           p.C * std::pow(x, p.d - 2.0) * dx.value);
    ResidualPoint pt;
    pt.x = x;
    pt.t = t;
    pt.lhs = sol.constants[0] * lhs;
    pt.rhs = sol.constants[0] * rhs;
    pts[gi] = pt;
  });
  return make_report(Method::GrunwaldLetnikov, std::move(pts));
}

}  // namespace

const char* to_string(Method method) noexcept {
  switch (method) {
    case Method::TermwiseExact: return "TermwiseExact";
    case Method::GrunwaldLetnikov: return "GrunwaldLetnikov";
    case Method::AnalyticExact: return "AnalyticExact";
    case Method::FiniteDifference: return "FiniteDifference";
  }
  return "Unknown";
}

ResidualReport make_report(Method method, std::vector<ResidualPoint> points) {
  require(!points.empty(), ErrorCode::InvalidArgument, "residual report needs at least one point");
  double scale = 0.0;
  for (const auto& pt : points) scale = std::max({scale, std::abs(pt.lhs), std::abs(pt.rhs)});
  ResidualReport report;
  report.method = method;
  for (auto& pt : points) {
    const double big = std::max(std::abs(pt.lhs), std::abs(pt.rhs));
    pt.abs_err = std::abs(pt.lhs - pt.rhs);
    pt.rel_err = pt.abs_err / std::max(big, kRelErrFloor);
    pt.excluded = big < kExclusionRatio * scale;
    if (!pt.excluded) report.max_rel_err = std::max(report.max_rel_err, pt.rel_err);
  }
  report.points = std::move(points);
  return report;
}

double gl_fractional_derivative(const std::function<double(double)>& f, double alpha, double t,
                                double h) {
  require(alpha > 0.0, ErrorCode::InvalidArgument, "alpha must be positive");
  require(t > 0.0 && h > 0.0, ErrorCode::InvalidArgument, "t and h must be positive");
  require(h <= t / 50.0 * (1.0 + 1e-12), ErrorCode::StepTooLarge, "need h <= t/50");
  const auto n = static_cast<long>(std::floor(t / h + 1e-9));
  CompensatedSum<double> sum;
  double w = 1.0;
  for (long j = 0; j <= n; ++j) {
    const double tau = std::max(0.0, t - static_cast<double>(j) * h);
    sum.add(w * f(tau));
    w *= 1.0 - (alpha + 1.0) / static_cast<double>(j + 1);
    if (w == 0.0) break;
  }
  return sum.value() * std::pow(h, -alpha);
}

double gl_fractional_derivative_richardson(const std::function<double(double)>& f, double alpha,
                                           double t, double h) {
  return 2.0 * gl_fractional_derivative(f, alpha, t, 0.5 * h) - gl_fractional_derivative(f, alpha, t, h);
}

ResidualReport residual_pde(const pde::PdeSolution& sol, const std::vector<GridPoint>& grid,
                            double h) {
  require(!grid.empty(), ErrorCode::InvalidArgument, "empty grid");
  for (const auto& g : grid) {
    require(g.x > 0.0 && g.t > 0.0, ErrorCode::InvalidArgument, "grid points must be positive");
  }
  if (const auto* f = std::get_if<pde::ClosedFormExp>(&sol.repr)) return residual_closed_form(sol, *f, grid);
  if (const auto* f = std::get_if<pde::WrightSeriesForm>(&sol.repr)) return residual_wright(sol, *f, grid);
  return residual_fox_h(sol, std::get<pde::FoxHForm>(sol.repr), grid, h);
}

ResidualReport compare_series(const series::FracPowerSeries& lhs,
                              const series::FracPowerSeries& rhs, int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "need at least one coefficient");
  if (std::abs(lhs.rho() - rhs.rho()) > kLatticeTol * std::max(1.0, lhs.rho())) {
    throw Error(ErrorCode::ExponentMisalignment, kModule, "series have different exponent steps");
  }
  const double rho = lhs.rho();
  const double start = std::min(lhs.gamma0(), rhs.gamma0());
  const long off_l = align(lhs, start, rho).offset;
  const long off_r = align(rhs, start, rho).offset;
  std::vector<ResidualPoint> pts;
  for (long idx = 0; idx < n; ++idx) {
    ResidualPoint pt;
    pt.x = start + rho * static_cast<double>(idx);
    pt.lhs = coefficient_at(lhs, idx - off_l);
    pt.rhs = coefficient_at(rhs, idx - off_r);
    pts.push_back(pt);
  }
  return make_report(Method::TermwiseExact, std::move(pts));
}

ResidualReport residual_ode_coefficients(const series::FracPowerSeries& member,
                                         const series::EulerPolynomialOperator& op, double alpha,
                                         int n_coeffs) {
  require(static_cast<int>(member.size()) >= n_coeffs, ErrorCode::InvalidArgument,
          "member has fewer coefficients than requested");
  return compare_series(series::rl_derivative(member, alpha), series::euler_apply(op, member), n_coeffs);
}

namespace {

ResidualReport pooled_member_report(const std::vector<ode::LargeAlphaMember>& members,
                                    const series::EulerPolynomialOperator& op, double alpha,
                                    int n_coeffs) {
  require(n_coeffs >= 1, ErrorCode::InvalidArgument, "need at least one coefficient");
  std::vector<ResidualPoint> pts;
  for (const auto& member : members) {
    auto r = residual_ode_coefficients(ode::member_series(member, n_coeffs + 1), op, alpha, n_coeffs);
    for (auto& p : r.points) pts.push_back(p);
  }
  return make_report(Method::TermwiseExact, std::move(pts));
}

}  // namespace

ResidualReport residual_pde_coefficients(const pde::PdeSolution& solution, int n_coeffs) {
  const auto* form = std::get_if<pde::WrightSeriesForm>(&solution.repr);
  require(form != nullptr, ErrorCode::UnsupportedClass, "coefficient check needs the Wright series form");
  const auto& p = solution.problem;
  if (form->d2) {
    return pooled_member_report(form->members, series::EulerPolynomialOperator({solution.K}, p.m),
                                p.alpha, n_coeffs);
  }
  const auto red = pde::similarity_reduce(p);
  return pooled_member_report(form->members, ode::right_side_operator(red.ode), p.alpha, n_coeffs);
}

ResidualReport residual_ode_solution_coefficients(const ode::OdeSolution& solution, int n_coeffs) {
  require(solution.branch == ode::Branch::LargeAlpha, ErrorCode::UnsupportedClass,
          "coefficient check needs the large-alpha branch");
  return pooled_member_report(solution.members, ode::right_side_operator(solution.problem),
                              solution.problem.alpha, n_coeffs);
}

ResidualReport h_operator_identity_check(const fox_h::HFunctionSpec& spec, const HOperatorKind& kind,
                                         const std::vector<double>& z_values, double a) {
  require(spec.l() == 0, ErrorCode::UnsupportedClass, "operator identities need l = 0");
  require(spec.p() >= 1 && spec.upper().back().shift == 1.0, ErrorCode::UnsupportedClass,
          "last upper entry must be (1, alpha_p)");
  require(a > 0.0, ErrorCode::InvalidArgument, "a must be positive");
  require(!z_values.empty(), ErrorCode::InvalidArgument, "no sample points");
  const double ap = spec.upper().back().scale;
  double z_max = 0.0;
  for (double z : z_values) {
    require(z > 0.0, ErrorCode::InvalidArgument, "sample points must be positive");
    z_max = std::max(z_max, z);
  }
  const double lo = std::log(a) - ap * std::log(z_max * 1.01);
  const fox_h::ContourGrid grid(spec, std::exp(lo - 1.0), 1e30);
  auto f = [&](double z) {
    if (z <= 0.0) return 0.0;
    const double la = std::log(a) - ap * std::log(z);
    if (la > kNegligibleLogArg) return 0.0;
    return grid(std::exp(la));
  };

  std::vector<ResidualPoint> pts;
  Method method = Method::GrunwaldLetnikov;
  if (const auto* rl = std::get_if<RLDerivative>(&kind)) {
    require(rl->alpha > 0.0, ErrorCode::InvalidArgument, "alpha must be positive");
    auto upper = spec.upper();
    upper.back().shift = 1.0 - rl->alpha;
    const fox_h::HFunctionSpec shifted(spec.m(), 0, std::move(upper), spec.lower());
    for (double z : z_values) {
      ResidualPoint pt;
      pt.x = z;
      pt.lhs = gl_fractional_derivative_richardson(f, rl->alpha, z, std::min(1e-3, z / 100.0));
      pt.rhs = std::pow(z, -rl->alpha) * fox_h::eval_mellin_barnes(shifted, a * std::pow(z, -ap));
      pts.push_back(pt);
    }
  } else {
    const int j = std::get<EulerShift>(kind).j;
    require(j >= 0 && j < spec.m(), ErrorCode::UnsupportedClass, "shifted lower index must be < m");
    auto lower = spec.lower();
    const double bj = lower[j].shift;
    const double beta = lower[j].scale;
    lower[j].shift += 1.0;
    const fox_h::HFunctionSpec shifted(spec.m(), 0, spec.upper(), std::move(lower));
    for (double z : z_values) {
      const Derivatives d = central_differences(f, z, kFdRelStep * z);
      ResidualPoint pt;
      pt.x = z;
      pt.lhs = beta / ap * z * d.first + bj * d.value;
      pt.rhs = fox_h::eval_mellin_barnes(shifted, a * std::pow(z, -ap));
      pts.push_back(pt);
    }
    method = Method::FiniteDifference;
  }
  return make_report(method, std::move(pts));
}

ResidualReport wright_operator_identity_check(const wright::WrightSpec& spec,
                                              const WrightOperatorKind& kind, double a,
                                              int n_coeffs) {
  require(n_coeffs >= 1, ErrorCode::InvalidArgument, "need at least one coefficient");
  if (const auto* rl = std::get_if<WrightRLDerivative>(&kind)) {
    require(rl->alpha > 0.0, ErrorCode::InvalidArgument, "alpha must be positive");
    require(!spec.upper().empty() && spec.upper()[0].shift == Complex{1.0, 0.0} &&
                spec.upper()[0].scale == 1.0,
            ErrorCode::PreconditionViolation, "first upper parameter must be (1, 1)");
    require(!spec.lower().empty(), ErrorCode::PreconditionViolation, "need a lower parameter");
    const auto& first = spec.lower()[0];
    require(first.shift.imag() == 0.0 && first.shift.real() > 0.0 && first.scale > 0.0,
            ErrorCode::PreconditionViolation, "need real B_1 > 0 and beta_1 > 0");
    const double b1 = first.shift.real();
    const double beta1 = first.scale;

    int shift = 0;
    while (is_nonpositive_integer(b1 + shift * beta1 - rl->alpha) && shift < 1000) ++shift;

    const int total = n_coeffs + shift + 1;
    std::vector<Complex> c;
    for (int k = 0; k < total; ++k) c.push_back(wright::term(spec, a, k));
    const auto lhs = series::rl_derivative(series::FracPowerSeries(b1 - 1.0, beta1, std::move(c)), rl->alpha);

    auto upper = spec.upper();
    auto lower = spec.lower();
    for (std::size_t i = 1; i < upper.size(); ++i) upper[i].shift += shift * upper[i].scale;
    lower[0].shift = b1 + shift * beta1 - rl->alpha;
    for (std::size_t j = 1; j < lower.size(); ++j) lower[j].shift += shift * lower[j].scale;
    const wright::WrightSpec shifted(std::move(upper), std::move(lower));
    const Complex scale = std::pow(Complex{a, 0.0}, shift);
    const auto rhs = series::wright_series(shifted, a, b1 + shift * beta1 - 1.0 - rl->alpha, beta1,
                                           n_coeffs + 1, scale);
    return compare_series(lhs, rhs, n_coeffs);
  }

  const auto& e = std::get<EulerPlusR>(kind);
  require(e.sigma != 0.0, ErrorCode::PreconditionViolation, "sigma must be non-zero");
  require(e.alpha > 0.0, ErrorCode::InvalidArgument, "alpha must be positive");
  require(!spec.upper().empty() && spec.upper()[0].shift.imag() == 0.0,
          ErrorCode::PreconditionViolation, "need a real first upper parameter");
  const double a1 = spec.upper()[0].shift.real();
  const double alpha1 = spec.upper()[0].scale;
  const double gamma0 = a1 * e.sigma / alpha1 - e.alpha * e.R;
  auto upper = spec.upper();
  upper[0].shift += 1.0;
  const wright::WrightSpec raised(std::move(upper), spec.lower());
  const double factor = e.sigma / (alpha1 * e.alpha);

  if (e.sigma > 0.0) {
    const auto base = series::wright_series(spec, a, gamma0, e.sigma, n_coeffs);
    const series::EulerPolynomialOperator op({e.R, 1.0 / e.alpha}, 0);
    const auto rhs = series::wright_series(raised, a, gamma0, e.sigma, n_coeffs, factor);
    return compare_series(series::euler_apply(op, base), rhs, n_coeffs);
  }
  // negative exponent step: compare term by term directly
  std::vector<ResidualPoint> pts;
  for (int k = 0; k < n_coeffs; ++k) {
    const double exponent = gamma0 + e.sigma * k;
    ResidualPoint pt;
    pt.x = exponent;
    pt.lhs = (exponent / e.alpha + e.R) * wright::term(spec, a, k);
    pt.rhs = factor * wright::term(raised, a, k);
    pts.push_back(pt);
  }
  return make_report(Method::TermwiseExact, std::move(pts));
}

}  // namespace fracsol::verify
