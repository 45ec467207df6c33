#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "fracsol/fox_h.hpp"
#include "fracsol/frac_series.hpp"
#include "fracsol/solver_pde.hpp"
#include "fracsol/wright.hpp"

namespace fracsol::verify {

enum class Method {
  TermwiseExact,     // coefficient or termwise series comparison
  GrunwaldLetnikov,  // GL in time, finite differences in space
  AnalyticExact,     // closed-form derivatives of the exponential solution
  FiniteDifference,  // central differences only
};

const char* to_string(Method method) noexcept;

/// For coefficient checks `x` holds the exponent of the compared term and `t` is empty.
struct ResidualPoint {
  double x = 0.0;
  std::optional<double> t;
  Complex lhs;
  Complex rhs;
  double abs_err = 0.0;
  double rel_err = 0.0;
  bool excluded = false;  // both sides below 1e-12 of the largest value in the report
};

struct ResidualReport {
  Method method = Method::TermwiseExact;
  std::vector<ResidualPoint> points;
  double max_rel_err = 0.0;

  bool passes(double tol) const noexcept { return max_rel_err < tol; }
};

inline constexpr double kRelErrFloor = 1e-300;
inline constexpr double kExclusionRatio = 1e-12;

/// Fills abs_err, rel_err, excluded and max_rel_err from raw lhs/rhs pairs.
ResidualReport make_report(Method method, std::vector<ResidualPoint> points);

/// h^-alpha sum_{j=0}^{floor(t/h)} w_j f(t - j h), w_j = (-1)^j binom(alpha, j).
/// First order in h. Throws StepTooLarge unless h <= t/50.
double gl_fractional_derivative(const std::function<double(double)>& f, double alpha, double t,
                                double h);

/// Two GL sums (h and h/2) combined to cancel the O(h) term.
double gl_fractional_derivative_richardson(const std::function<double(double)>& f, double alpha,
                                           double t, double h);

struct GridPoint {
  double x;
  double t;
};

/// Residual of the diffusion equation at each grid point.
///   ClosedFormExp: exact derivatives (h unused).
///   WrightSeriesForm: termwise exact Riemann-Liouville and x-derivatives.
///   FoxHForm: GL in t with step h, central differences in x (step 1e-3 x,
///   one Richardson step).
ResidualReport residual_pde(const pde::PdeSolution& solution, const std::vector<GridPoint>& grid,
                            double h);

/// Compares rl_derivative(member, alpha) with euler_apply(op, member) term by
/// term on the common exponent lattice, over n_coeffs terms of the derivative.
/// Throws ExponentMisalignment when the lattices do not line up.
ResidualReport residual_ode_coefficients(const series::FracPowerSeries& member,
                                         const series::EulerPolynomialOperator& op, double alpha,
                                         int n_coeffs);

/// residual_ode_coefficients for every member of a WrightSeriesForm solution,
/// against the operator of the reduced ODE (for d = 2: multiplication by K with
/// time weight m). Points of all members are pooled into one report.
/// Throws UnsupportedClass for other representations.
ResidualReport residual_pde_coefficients(const pde::PdeSolution& solution, int n_coeffs = 20);

/// Same for a large-alpha ODE solution against its right-side operator.
/// Throws UnsupportedClass for the small-alpha branch.
ResidualReport residual_ode_solution_coefficients(const ode::OdeSolution& solution, int n_coeffs = 20);

/// Coefficientwise comparison of two series on a common lattice, n terms from
/// the lower starting exponent.
ResidualReport compare_series(const series::FracPowerSeries& lhs,
                              const series::FracPowerSeries& rhs, int n);

struct RLDerivative {
  double alpha;
};
struct EulerShift {
  int j;  // index of the lower parameter raised by one (0-based, j < m)
};
using HOperatorKind = std::variant<RLDerivative, EulerShift>;

/// Checks, for f(z) = H[a z^{-alpha_p}] with last upper entry (1, alpha_p):
///   RLDerivative: D^alpha f = z^-alpha H[a z^{-alpha_p} | upper last (1-alpha, alpha_p)]
///   EulerShift:   (beta_j/alpha_p z d/dz + B_j) f = H[... | B_j + 1]
/// at the given z values. Throws UnsupportedClass outside that shape.
ResidualReport h_operator_identity_check(const fox_h::HFunctionSpec& spec, const HOperatorKind& kind,
                                         const std::vector<double>& z_values = {0.5, 1.0, 2.0},
                                         double a = 1.0);

struct WrightRLDerivative {
  double alpha;
};
struct EulerPlusR {
  double alpha;
  double R;
  double sigma;
};
using WrightOperatorKind = std::variant<WrightRLDerivative, EulerPlusR>;

/// Coefficientwise check of the Wright-function operator identities:
///   WrightRLDerivative: D^alpha (z^{B_1-1} Psi[a z^{beta_1}]) against the shifted
///     Wright function (upper (1,1) first, lower B_1 > 0, beta_1 > 0 required);
///   EulerPlusR: (z d/dz / alpha + R)(z^{A_1 sigma/alpha_1 - alpha R} Psi[a z^sigma])
///     against sigma/(alpha_1 alpha) times the Wright function with A_1 + 1.
/// Throws PreconditionViolation when the parameters do not fit.
ResidualReport wright_operator_identity_check(const wright::WrightSpec& spec,
                                              const WrightOperatorKind& kind, double a = 1.0,
                                              int n_coeffs = 20);

}  // namespace fracsol::verify
