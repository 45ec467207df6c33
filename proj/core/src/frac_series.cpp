#include "fracsol/frac_series.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fracsol/error.hpp"
#include "fracsol/summation.hpp"

namespace fracsol::series {
namespace {

constexpr std::string_view kModule = "frac_series";
constexpr double kExponentTol = 1e-12;

bool is_finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

Complex horner(const std::vector<double>& mono, Complex s) {
  Complex acc{0.0, 0.0};
  for (auto it = mono.rbegin(); it != mono.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Complex horner_derivative(const std::vector<double>& mono, Complex s) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = mono.size() - 1; i >= 1; --i) {
    acc = acc * s + static_cast<double>(i) * mono[i];
  }
  return acc;
}

}  // namespace

FracPowerSeries::FracPowerSeries(double gamma0, double rho, std::vector<Complex> coeffs)
    : gamma0_(gamma0), rho_(rho), coeffs_(std::move(coeffs)) {
  if (!std::isfinite(gamma0_)) throw Error(ErrorCode::InvalidArgument, kModule, "gamma0 not finite");
  if (!(rho_ > 0.0) || !std::isfinite(rho_)) {
    throw Error(ErrorCode::InvalidArgument, kModule, "rho must be positive");
  }
  for (const auto& c : coeffs_) {
    if (!is_finite(c)) throw Error(ErrorCode::InvalidArgument, kModule, "coefficient not finite");
  }
}

FracPowerSeries& FracPowerSeries::operator*=(Complex factor) {
  for (auto& c : coeffs_) c *= factor;
  return *this;
}

FracPowerSeries operator*(Complex factor, FracPowerSeries s) {
  s *= factor;
  return s;
}

FracPowerSeries operator+(const FracPowerSeries& a, const FracPowerSeries& b) {
  if (std::abs(a.rho() - b.rho()) > kExponentTol * std::max(1.0, a.rho())) {
    throw Error(ErrorCode::ExponentMisalignment, kModule, "series have different exponent steps");
  }
  const FracPowerSeries& lo = a.gamma0() <= b.gamma0() ? a : b;
  const FracPowerSeries& hi = a.gamma0() <= b.gamma0() ? b : a;
  const double offset = (hi.gamma0() - lo.gamma0()) / lo.rho();
  const double shift = std::round(offset);
  if (std::abs(offset - shift) > kExponentTol * std::max(1.0, offset)) {
    throw Error(ErrorCode::ExponentMisalignment, kModule, "series lie on different lattices");
  }
  const auto k = static_cast<std::size_t>(shift);
  std::vector<Complex> c(std::max(lo.size(), k + hi.size()), Complex{});
  for (std::size_t j = 0; j < lo.size(); ++j) c[j] += lo.coeffs()[j];
  for (std::size_t j = 0; j < hi.size(); ++j) c[j + k] += hi.coeffs()[j];
  return FracPowerSeries(lo.gamma0(), lo.rho(), std::move(c));
}

FracPowerSeries wright_series(const wright::WrightSpec& spec, Complex multiplier, double gamma0,
                              double rho, int n_terms, Complex scale) {
  if (n_terms < 1) throw Error(ErrorCode::InvalidArgument, kModule, "need at least one term");
  std::vector<Complex> c;
  c.reserve(static_cast<std::size_t>(n_terms));
  for (int k = 0; k < n_terms; ++k) c.push_back(scale * wright::term(spec, multiplier, k));
  return FracPowerSeries(gamma0, rho, std::move(c));
}

std::vector<double> characteristic_monomials(const std::vector<double>& a) {
  std::vector<double> mono(a.size(), 0.0);
  // falling factorial s(s-1)...(s-i+1), built up one factor at a time
  std::vector<double> falling{1.0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < falling.size(); ++k) mono[k] += a[i] * falling[k];
    std::vector<double> next(falling.size() + 1, 0.0);
    for (std::size_t k = 0; k < falling.size(); ++k) {
      next[k + 1] += falling[k];
      next[k] -= static_cast<double>(i) * falling[k];
    }
    falling = std::move(next);
  }
  return mono;
}

std::vector<Complex> polynomial_roots(const std::vector<double>& monomials) {
  std::vector<double> mono = monomials;
  while (!mono.empty() && mono.back() == 0.0) mono.pop_back();
  if (mono.size() <= 1) return {};
  const std::size_t n = mono.size() - 1;
  std::vector<Complex> roots;
  if (n == 1) {
    roots.push_back(-mono[0] / mono[1]);
  } else if (n == 2) {
    const double a = mono[2];
    const double b = mono[1];
    const double c = mono[0];
    const Complex sq = std::sqrt(Complex{b * b - 4.0 * a * c, 0.0});
    const Complex q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    if (q == Complex{0.0, 0.0}) {
      roots = {Complex{}, Complex{}};
    } else {
      roots = {q / a, c / q};
    }
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                      static_cast<Eigen::Index>(n));
    for (std::size_t i = 1; i < n; ++i) {
      companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
      companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -mono[i] / mono[n];
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      roots.push_back(solver.eigenvalues()[i]);
    }
  }
  for (auto& r : roots) {
    const Complex d = horner_derivative(mono, r);
    if (std::abs(d) > 1e-8 * std::abs(mono.back())) {
      const Complex step = horner(mono, r) / d;
      if (is_finite(step)) r -= step;
    }
    // keep real roots exactly real
    if (std::abs(r.imag()) <= 1e-14 * std::max(1.0, std::abs(r.real()))) r = {r.real(), 0.0};
  }
  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return roots;
}

EulerPolynomialOperator::EulerPolynomialOperator(std::vector<double> a, int time_weight)
    : a_(std::move(a)), time_weight_(time_weight) {
  if (a_.empty()) throw Error(ErrorCode::InvalidArgument, kModule, "operator needs coefficients");
  for (double v : a_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, kModule, "coefficient not finite");
  }
  if (a_.size() > 1 && a_.back() == 0.0) {
    throw Error(ErrorCode::DegenerateLeading, kModule, "leading coefficient a_n is zero");
  }
  if (time_weight_ < 0) throw Error(ErrorCode::InvalidArgument, kModule, "time weight must be >= 0");
  monomials_ = characteristic_monomials(a_);
  roots_ = polynomial_roots(monomials_);
}

Complex EulerPolynomialOperator::characteristic(Complex s) const { return horner(monomials_, s); }

Complex EulerPolynomialOperator::factored(Complex s) const {
  Complex acc{leading(), 0.0};
  for (const auto& r : roots_) acc *= s - r;
  return acc;
}

FracPowerSeries rl_derivative(const FracPowerSeries& s, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, kModule, "alpha must be positive");
  std::vector<Complex> c(s.size(), Complex{});
  bool leading_seen = false;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s.coeffs()[j] == Complex{}) continue;
    const double p = s.exponent(j);
    if (!leading_seen) {
      if (!(p > -1.0)) {
        std::ostringstream os;
        os << "leading exponent " << p << " is not above -1";
        throw Error(ErrorCode::ExponentOutOfRange, kModule, os.str());
      }
      leading_seen = true;
    }
    c[j] = s.coeffs()[j] * gamma::gamma_ratio(p + 1.0, p + 1.0 - alpha);
  }
  return FracPowerSeries(s.gamma0() - alpha, s.rho(), std::move(c));
}

FracPowerSeries euler_apply(const EulerPolynomialOperator& op, const FracPowerSeries& s) {
  std::vector<Complex> c(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    c[j] = s.coeffs()[j] * op.characteristic(Complex{s.exponent(j), 0.0});
  }
  return FracPowerSeries(s.gamma0() + op.time_weight(), s.rho(), std::move(c));
}

Complex eval_series(const FracPowerSeries& s, double z) {
  if (!(z > 0.0)) throw Error(ErrorCode::InvalidArgument, kModule, "z must be positive");
  const double log_z = std::log(z);
  CompensatedSum<Complex> acc;
  std::vector<double> mags;
  mags.reserve(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    const Complex c = s.coeffs()[j];
    const Complex t = c == Complex{} ? Complex{} : c * std::exp(s.exponent(j) * log_z);
    acc.add(t);
    mags.push_back(std::abs(t));
  }
  const Complex total = acc.value();
  const std::size_t n = mags.size();
  if (n >= 3) {
    const bool decreasing = mags[n - 1] < mags[n - 2] && mags[n - 2] < mags[n - 3];
    const bool negligible = mags[n - 1] <= 1e-12 * std::abs(total);
    if (!decreasing && !negligible) {
      throw Error(ErrorCode::NoConvergence, kModule, "series tail is not decaying at this z");
    }
  }
  return total;
}

IdentitySides gamma_product_identity_check(double a, int m, Complex b) {
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, kModule, "a must be positive");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, kModule, "m must be a positive integer");
  Complex log_lhs = -gamma::ln_gamma(1.0 + a * b + static_cast<double>(m));
  Complex log_rhs = -gamma::ln_gamma(1.0 + a * b) - static_cast<double>(m) * std::log(a);
  for (int i = 1; i <= m; ++i) {
    const Complex arg = static_cast<double>(i) / a + b;
    log_lhs += gamma::ln_gamma(arg + 1.0);
    log_rhs += gamma::ln_gamma(arg);
  }
  return {std::exp(log_lhs), std::exp(log_rhs), log_lhs, log_rhs};
}

double IdentitySides::rel_err() const {
  Complex d = log_lhs - log_rhs;
  // branches of the log may differ by multiples of 2 pi i
  d.imag(std::remainder(d.imag(), 2.0 * std::numbers::pi));
  // exp(d) - 1 without cancellation for small d
  const Complex em1 = std::abs(d) < 1e-5 ? d * (1.0 + d * (0.5 + d / 6.0)) : std::exp(d) - 1.0;
  return std::abs(em1);
}

}  // namespace fracsol::series
