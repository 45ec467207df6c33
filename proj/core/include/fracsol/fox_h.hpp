#pragma once

#include <vector>

#include "fracsol/gamma_complex.hpp"

namespace fracsol::fox_h {

/// (shift, scale) pair of an H-function; scale must be positive.
struct HParam {
  double shift;
  double scale;
};

/// H^{m,l}_{p,q}[z | (A_i, alpha_i)_{1,p}; (B_j, beta_j)_{1,q}].
///
/// Integrand of the Mellin-Barnes representation:
///   prod_{j<m} Gamma(B_j - beta_j s) prod_{i<l} Gamma(1 - A_i + alpha_i s)
///   / (prod_{i>=l} Gamma(A_i - alpha_i s) prod_{j>=m} Gamma(1 - B_j + beta_j s)) * z^s
class HFunctionSpec {
 public:
  HFunctionSpec(int m, int l, std::vector<HParam> upper, std::vector<HParam> lower);

  int m() const noexcept { return m_; }
  int l() const noexcept { return l_; }
  int p() const noexcept { return static_cast<int>(upper_.size()); }
  int q() const noexcept { return static_cast<int>(lower_.size()); }
  const std::vector<HParam>& upper() const noexcept { return upper_; }
  const std::vector<HParam>& lower() const noexcept { return lower_; }

  friend bool operator==(const HFunctionSpec& a, const HFunctionSpec& b);

 private:
  int m_;
  int l_;
  std::vector<HParam> upper_;
  std::vector<HParam> lower_;
};

bool operator==(const HParam& a, const HParam& b);

struct HConvergence {
  double omega;      // integrability when > 0, for |arg z| < arg_bound
  double mu;         // prod alpha^alpha prod beta^-beta
  double delta;      // sum B - sum A + (p - q)/2
  double nu;         // sum beta - sum alpha
  double arg_bound;  // pi * omega / 2

  bool integrable() const noexcept { return omega > 0.0; }
};

HConvergence convergence_params(const HFunctionSpec& spec);

/// mantissa * exp(log_scale). Lets values far below DBL_MIN be compared.
struct ScaledValue {
  double mantissa = 0.0;
  double log_scale = 0.0;

  double value() const noexcept;
  /// log|value|; -inf for an exact zero.
  double log_abs() const noexcept;
  ScaledValue scaled_by(double factor) const noexcept;
};

/// |a - b| / max(|a|, |b|), evaluated without leaving log space.
double relative_difference(const ScaledValue& a, const ScaledValue& b) noexcept;

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double initial_half_width = 40.0;
  double initial_step = 0.05;
  int max_refinements = 5;
};

/// Trapezoid quadrature of the Mellin-Barnes integral along a vertical line that
/// separates the two pole sequences. T and 1/h are doubled together until two
/// successive estimates agree to rel_tol.
///
/// For l = 0 the line sits at min_j(B_j/beta_j) - 1/2, or further left near the
/// saddle of the integrand when z is large enough for that to matter (the mirror
/// image applies for m = 0). Requires omega > 0 and z > 0.
///
/// Throws QuadratureFailure when refinement stalls. That includes very large z
/// (around 1e9 for the solver specs), where the Gamma logs on the shifted line
/// are too large to resolve the integrand to rel_tol.
ScaledValue eval_mellin_barnes_scaled(const HFunctionSpec& spec, double z,
                                      const QuadratureOptions& options = {});

/// Plain value. For l = 0 and nu > 0 it returns 0 without integrating when the
/// large-z envelope is below exp(-1000), since the value underflows anyway.
double eval_mellin_barnes(const HFunctionSpec& spec, double z, const QuadratureOptions& options = {});

/// Fixed trapezoid nodes on the default line, with the Gamma products cached.
/// Evaluating at a new z costs one pass over the nodes; meant for the many
/// closely spaced samples a Grunwald-Letnikov sum or a finite difference needs.
/// Accuracy is absolute (relative to the integrand on the line), so values that
/// are exponentially small come out as tiny absolute numbers rather than with
/// full relative precision.
class ContourGrid {
 public:
  ContourGrid(const HFunctionSpec& spec, double z_min, double z_max);

  double operator()(double z) const;
  std::size_t node_count() const noexcept { return weights_.size(); }
  double line() const noexcept { return gamma_; }

 private:
  double gamma_ = 0.0;
  double step_ = 0.0;
  std::vector<Complex> weights_;  // Gamma product at node k
};

HFunctionSpec invert_argument(const HFunctionSpec& spec);
HFunctionSpec power_scale(const HFunctionSpec& spec, double k);
HFunctionSpec shift_by_power(const HFunctionSpec& spec, double sigma);

struct GaussReduction {
  HFunctionSpec spec;
  double scale;                // (2 pi)^((r-1)/2) / sqrt(r)
  double argument_multiplier;  // r^r
};

/// Strips an upper (1, r) entry and the lower (j/r, 1)_{j=1..r} entries using
/// Gauss's multiplication formula. Throws ShapeMismatch when they are absent.
GaussReduction gauss_multiplication_reduce(const HFunctionSpec& spec, int r);

/// Inverse of gauss_multiplication_reduce: inserts (j/r, 1)_{1..r} at the front
/// of the lower list and (1, r) at the end of the upper list.
HFunctionSpec gauss_multiplication_expand(const HFunctionSpec& spec, int r);

/// exp(-nu mu^{1/nu} z^{1/nu}) z^{(2 delta + 1)/(2 nu)}, the large-z envelope of
/// H^{m,0}_{p,q} without its (unknown) constant. Throws NonDecaying when nu <= 0.
double asymptotic_estimate(const HFunctionSpec& spec, double z);

namespace detail {

/// Sum of residues at the right poles s = (B_j + k)/beta_j, j < m. Simple poles
/// only (throws UnsupportedClass on a collision). Cross-check oracle for small
/// arguments; loses accuracy to cancellation once z is large.
double residue_series(const HFunctionSpec& spec, double z, int terms_per_pole = 200);

}  // namespace detail
}  // namespace fracsol::fox_h
