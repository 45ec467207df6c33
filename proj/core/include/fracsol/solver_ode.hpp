#pragma once

#include <optional>
#include <vector>

#include "fracsol/fox_h.hpp"
#include "fracsol/frac_series.hpp"
#include "fracsol/wright.hpp"

namespace fracsol::ode {

/// d^alpha y/dz^alpha = z^m (a_n z^n y^(n) + ... + a_1 z y' + a_0 y), z > 0.
struct OdeProblem {
  double alpha = 1.0;
  int m = 0;
  std::vector<double> a_coeffs;  // a_0 .. a_n
};

/// Throws InvalidArgument / DegenerateLeading unless alpha > 0, m >= 0, n >= 1, a_n > 0.
void validate(const OdeProblem& problem);

int order(const OdeProblem& problem);

struct CharacteristicPoly {
  std::vector<double> monomials;  // constant first
  std::vector<Complex> roots;
  double max_residual = 0.0;      // max_j |P(s_j)| / max_i |monomial_i|
};

CharacteristicPoly characteristic_poly(const OdeProblem& problem);

/// The Euler operator on the right-hand side, including the z^m weight.
series::EulerPolynomialOperator right_side_operator(const OdeProblem& problem);

/// y(z) = c H[z^power / divisor] with power = -(alpha+m), divisor = a_n (alpha+m)^(m+n).
struct SmallAlphaForm {
  fox_h::HFunctionSpec spec;
  double power;
  double divisor;
};

/// z^gamma0 * Psi[multiplier * z^rho]; one member of the large-alpha solution.
struct LargeAlphaMember {
  int k;
  wright::WrightSpec spec;
  double multiplier;
  double gamma0;
  double rho;
};

enum class Branch { SmallAlpha, LargeAlpha };

struct OdeSolution {
  Branch branch;
  OdeProblem problem;
  std::vector<Complex> roots;
  std::vector<Complex> constants;
  std::optional<SmallAlphaForm> small;
  std::vector<LargeAlphaMember> members;
};

/// H-function spec with upper (1, alpha+m) and lower (-s_j/(alpha+m), 1)_{1..n},
/// (j/(alpha+m), 1)_{1..m}. Throws ComplexRoots for non-real roots.
fox_h::HFunctionSpec small_alpha_spec(double alpha, int m, const std::vector<Complex>& roots);

/// Members k = 1..floor(alpha)+1 for leading coefficient a_n and roots s_1..s_n
/// (n may be 0). Upper ((alpha-k-s_i)/(alpha+m), 1), ((alpha-k+i)/(alpha+m), 1),
/// (1, 1); lower (1+alpha-k, alpha+m); multiplier a_n (alpha+m)^(m+n).
std::vector<LargeAlphaMember> large_alpha_members(double alpha, int m, double leading,
                                                  const std::vector<Complex>& roots);

/// Constants default to 1; throws BranchMismatch unless alpha < n and
/// ComplexRoots when the roots are not real.
OdeSolution solve_small_alpha(const OdeProblem& problem, std::vector<Complex> constants = {});

/// Constants default to 1; throws BranchMismatch unless alpha > n.
OdeSolution solve_large_alpha(const OdeProblem& problem, std::vector<Complex> constants = {});

/// Dispatches on alpha versus n; alpha == n is rejected with BranchMismatch.
OdeSolution solve(const OdeProblem& problem, std::vector<Complex> constants = {});

/// Power-series image of one member, n_terms coefficients.
series::FracPowerSeries member_series(const LargeAlphaMember& member, int n_terms,
                                      Complex constant = 1.0);

/// Value of one member at z > 0 (without its free constant).
Complex evaluate_member(const LargeAlphaMember& member, double z);

Complex evaluate(const OdeSolution& solution, double z);

}  // namespace fracsol::ode
