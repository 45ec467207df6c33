#pragma once

#include <vector>

#include "fracsol/gamma_complex.hpp"
#include "fracsol/wright.hpp"

namespace fracsol::series {

/// sum_j c_j z^(gamma0 + rho j), j = 0..N-1.
class FracPowerSeries {
 public:
  FracPowerSeries(double gamma0, double rho, std::vector<Complex> coeffs);

  double gamma0() const noexcept { return gamma0_; }
  double rho() const noexcept { return rho_; }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  double exponent(std::size_t j) const noexcept { return gamma0_ + rho_ * static_cast<double>(j); }

  FracPowerSeries& operator*=(Complex factor);

 private:
  double gamma0_;
  double rho_;
  std::vector<Complex> coeffs_;
};

/// Sum of two series on the same exponent lattice (exponents compared to 1e-12).
/// Throws ExponentMisalignment when the lattices differ.
FracPowerSeries operator+(const FracPowerSeries& a, const FracPowerSeries& b);
FracPowerSeries operator*(Complex factor, FracPowerSeries s);

/// scale * z^gamma0 * pPsi_q[multiplier * z^rho], truncated to n_terms terms.
FracPowerSeries wright_series(const wright::WrightSpec& spec, Complex multiplier, double gamma0,
                              double rho, int n_terms, Complex scale = 1.0);

/// Monomial coefficients (constant first) of
///   P(s) = a_n s(s-1)...(s-n+1) + ... + a_1 s + a_0.
std::vector<double> characteristic_monomials(const std::vector<double>& a);

/// Roots of a real polynomial given constant-first monomial coefficients.
/// Closed form up to degree 2, companion-matrix eigenvalues beyond; each root
/// gets one Newton polish. Sorted by descending real part, then imaginary part.
std::vector<Complex> polynomial_roots(const std::vector<double>& monomials);

/// z^m (a_n z^n d^n/dz^n + ... + a_1 z d/dz + a_0), stored both as the a_i and
/// as the roots of its characteristic polynomial.
class EulerPolynomialOperator {
 public:
  /// a = {a_0, ..., a_n}. Throws DegenerateLeading when n >= 1 and a_n = 0.
  EulerPolynomialOperator(std::vector<double> a, int time_weight);

  const std::vector<double>& coefficients() const noexcept { return a_; }
  const std::vector<double>& monomials() const noexcept { return monomials_; }
  const std::vector<Complex>& roots() const noexcept { return roots_; }
  double leading() const noexcept { return a_.back(); }
  int order() const noexcept { return static_cast<int>(a_.size()) - 1; }
  int time_weight() const noexcept { return time_weight_; }

  /// P(s) from the monomial form.
  Complex characteristic(Complex s) const;
  /// a_n prod (s - s_j) from the root form.
  Complex factored(Complex s) const;

 private:
  std::vector<double> a_;
  int time_weight_;
  std::vector<double> monomials_;
  std::vector<Complex> roots_;
};

/// Termwise Riemann-Liouville derivative (lower terminal 0):
///   z^p -> Gamma(p+1)/Gamma(p+1-alpha) z^(p-alpha).
/// Throws ExponentOutOfRange when the first non-zero term has exponent <= -1.
FracPowerSeries rl_derivative(const FracPowerSeries& s, double alpha);

/// z d/dz acts on z^p as p, so coefficient j picks up P(gamma0 + rho j); the
/// exponents then rise by the time weight m.
FracPowerSeries euler_apply(const EulerPolynomialOperator& op, const FracPowerSeries& s);

/// Compensated partial sum at z > 0. Throws NoConvergence when the tail is
/// neither decreasing nor negligible.
Complex eval_series(const FracPowerSeries& s, double z);

struct IdentitySides {
  Complex lhs;
  Complex rhs;
  Complex log_lhs;  // principal logs; finite even when lhs/rhs overflow
  Complex log_rhs;

  /// |lhs/rhs - 1| computed from the logs.
  double rel_err() const;
};

/// Both sides of
///   prod_{i=1}^m Gamma(i/a + b + 1) / Gamma(1 + ab + m)
///     = prod_{i=1}^m Gamma(i/a + b) / (a^m Gamma(1 + ab)).
/// Throws PoleError when any Gamma argument is a pole.
IdentitySides gamma_product_identity_check(double a, int m, Complex b);

}  // namespace fracsol::series
