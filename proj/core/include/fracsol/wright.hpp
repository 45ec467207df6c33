#pragma once

#include <limits>
#include <span>
#include <vector>

#include "fracsol/gamma_complex.hpp"

namespace fracsol::wright {

/// One (shift, scale) pair: contributes Gamma(shift + scale * k) to a series term.
struct WrightParam {
  Complex shift;
  double scale;
};

/// Parameters of the generalized Wright function
///
///   pPsi_q[z] = sum_k  prod_i Gamma(a_i + alpha_i k) / prod_j Gamma(b_j + beta_j k) * z^k / k!
///
/// Scales must be finite and non-zero.
class WrightSpec {
 public:
  WrightSpec() = default;
  WrightSpec(std::vector<WrightParam> upper, std::vector<WrightParam> lower);

  const std::vector<WrightParam>& upper() const noexcept { return upper_; }
  const std::vector<WrightParam>& lower() const noexcept { return lower_; }
  std::size_t p() const noexcept { return upper_.size(); }
  std::size_t q() const noexcept { return lower_.size(); }

 private:
  std::vector<WrightParam> upper_;
  std::vector<WrightParam> lower_;
};

struct ConvergenceVerdict {
  double delta = 0.0;                                       // sum beta_j - sum alpha_i
  double radius = std::numeric_limits<double>::infinity();  // 0 when divergent everywhere

  bool entire() const noexcept { return radius == std::numeric_limits<double>::infinity(); }
  bool convergent_at(Complex z) const noexcept { return entire() || std::abs(z) < radius; }
};

ConvergenceVerdict convergence(const WrightSpec& spec);

/// k-th term of the series at z (zero when a lower Gamma sits on a pole).
Complex term(const WrightSpec& spec, Complex z, int k);

/// Partial sums with compensated summation; stops once three consecutive terms
/// fall below 1e-15 of the running sum (cap: 500 terms).
/// Throws DivergentInput outside the convergence radius, NoConvergence at the cap.
Complex eval(const WrightSpec& spec, Complex z);

/// E_{alpha,beta}(z) as 1Psi1[(1,1); (beta,alpha)].
Complex mittag_leffler(double alpha, double beta, Complex z);

/// sum_{k>=1} z^k / (k! Gamma(alpha k + beta)). The k = 0 term 1/Gamma(beta) is
/// deliberately excluded; add it back for the k = 0 convention.
Complex classical_wright(Complex z, double alpha, double beta);

}  // namespace fracsol::wright
