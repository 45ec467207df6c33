#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "fracsol/fox_h.hpp"
#include "fracsol/solver_ode.hpp"

namespace fracsol::pde {

/// d^alpha u/dt^alpha = t^m (A x^d u_xx + B x^(d-1) u_x + C x^(d-2) u), x, t > 0.
struct DiffusionProblem {
  double alpha = 1.0;
  int m = 0;
  double d = 0.0;
  double A = 1.0;
  double B = 0.0;
  double C = 0.0;
  double a = 0.0;                  // exponent of the x^a prefactor in the ansatz
  std::vector<Complex> constants;  // free constants; empty means all 1
};

void validate(const DiffusionProblem& problem);

/// K = A a^2 - A a + B a + C.
double similarity_constant(const DiffusionProblem& problem);

/// (1 - B/A)^2 - 4C/A.
double discriminant(const DiffusionProblem& problem);

/// s_{1,2} = (alpha+m)/(2(2-d)) (B/A + 2a - 1 +- sqrt(discriminant)); s1 takes '+'.
/// Throws DegenerateD when d = 2.
std::pair<Complex, Complex> s_roots(const DiffusionProblem& problem);

/// u = x^a phi(z), z = x^exponent t, exponent = (d-2)/(alpha+m).
struct Reduction {
  ode::OdeProblem ode;
  double exponent;
};

/// The n = 2 ODE in z:
///   a_2 = A q^2, a_1 = q (A q + B + A(2a-1)), a_0 = K, with q = (d-2)/(alpha+m).
/// Throws DegenerateD when d = 2.
Reduction similarity_reduce(const DiffusionProblem& problem);

/// Parameter set used for the d = 2 series.
enum class D2Form {
  Derivation,  // lower (1+alpha-k, alpha+m), argument K (alpha+m)^m t^(alpha+m)
  Theorem,     // lower (alpha-1, alpha+m), argument K t^(alpha+m)
};

/// u = c1 x^a H[x^(2-d) / (divisor t^(alpha+m))], divisor = A (d-2)^2 (alpha+m)^m.
/// `spec` is empty when s_{1,2} are complex; evaluation then throws ComplexRoots.
struct FoxHForm {
  std::optional<fox_h::HFunctionSpec> spec;
  double divisor;
};

/// u = x^a sum_k c_k z^(alpha-k) Psi_k[multiplier z^(alpha+m)], z = x^((d-2)/(alpha+m)) t.
struct WrightSeriesForm {
  std::vector<ode::LargeAlphaMember> members;
  bool d2 = false;
  D2Form form = D2Form::Derivation;
};

/// u = c x^x_power t^t_power exp(-exp_coeff x^(2-d) / t^(1+m)).
struct ClosedFormExp {
  int sign;  // branch of the square root, +1 or -1
  double x_power;
  double t_power;
  double exp_coeff;  // (1+m) / (A (d-2)^2)
};

enum class ReprKind { FoxHForm, WrightSeriesForm, ClosedFormExp };

struct PdeSolution {
  DiffusionProblem problem;  // constants resolved; `a` is the exponent actually used
  Complex s1;
  Complex s2;
  double K;
  double ansatz_exponent;  // (d-2)/(alpha+m)
  std::vector<Complex> constants;
  std::variant<FoxHForm, WrightSeriesForm, ClosedFormExp> repr;

  ReprKind kind() const noexcept { return static_cast<ReprKind>(repr.index()); }
};

struct SolveOptions {
  bool force_h_form = false;  // alpha = 1: keep the H-function form instead of the exponential
  D2Form d2_form = D2Form::Derivation;
  int corollary_sign = +1;
};

/// 0 < alpha < 2, d != 2: FoxHForm. alpha > 2, d != 2: WrightSeriesForm with
/// floor(alpha)+1 members. d = 2: WrightSeriesForm in t. alpha = 1, d != 2 and a
/// real square root: ClosedFormExp (unless force_h_form).
/// Throws UnsupportedAlpha for alpha = 2, d != 2.
PdeSolution solve(const DiffusionProblem& problem, const SolveOptions& options = {});

/// Exponential solution for alpha = 1, d != 2; the ansatz exponent a is fixed
/// by the chosen sign. Throws ComplexDiscriminant when the square root is not real.
PdeSolution corollary_alpha1(const DiffusionProblem& problem, int sign = +1);

/// The value of a for which the alpha = 1 H-form collapses to the exponential.
double corollary_exponent(const DiffusionProblem& problem, int sign);

/// u(x, t), x, t > 0.
Complex evaluate(const PdeSolution& solution, double x, double t);

struct SamplePoint {
  double x;
  double t;
};

/// evaluate() at every point, spread over worker threads; results in input order.
std::vector<Complex> evaluate_grid(const PdeSolution& solution, const std::vector<SamplePoint>& points);

/// Reduced variable z = x^((d-2)/(alpha+m)) t.
double reduced_variable(const PdeSolution& solution, double x, double t);

}  // namespace fracsol::pde
