#include "fracsol/wright.hpp"

#include <cmath>
#include <sstream>

#include "fracsol/error.hpp"
#include "fracsol/summation.hpp"

namespace fracsol::wright {
namespace {

constexpr std::string_view kModule = "wright";
constexpr double kRelStop = 1e-15;
constexpr int kMaxTerms = 500;

// log of the gamma-product coefficient of term k, excluding z^k; nullopt-like
// flag when a lower parameter hits a pole (term is exactly zero).
struct LogCoefficient {
  Complex value;
  bool zero = false;
};

LogCoefficient log_coefficient(std::span<const WrightParam> upper,
                               std::span<const WrightParam> lower, int k) {
  LogCoefficient out{};
  const double kd = static_cast<double>(k);
  for (const auto& b : lower) {
    const Complex arg = b.shift + b.scale * kd;
    if (gamma::near_pole(arg)) {
      out.zero = true;
      return out;
    }
    out.value -= gamma::ln_gamma(arg);
  }
  for (const auto& a : upper) {
    const Complex arg = a.shift + a.scale * kd;
    if (gamma::near_pole(arg)) {
      std::ostringstream os;
      os << "upper parameter (" << a.shift << ", " << a.scale << ") hits a Gamma pole at k=" << k;
      throw Error(ErrorCode::PoleError, kModule, os.str());
    }
    out.value += gamma::ln_gamma(arg);
  }
  out.value -= gamma::ln_gamma(Complex{kd + 1.0, 0.0});
  return out;
}

// Term without overflow in z^k: magnitude and phase are assembled separately.
Complex assemble_term(const LogCoefficient& c, double log_abs_z, Complex unit_pow, int k) {
  if (c.zero) return {0.0, 0.0};
  const double log_mag = c.value.real() + static_cast<double>(k) * log_abs_z;
  return std::exp(log_mag) * std::polar(1.0, c.value.imag()) * unit_pow;
}

Complex sum_series(std::span<const WrightParam> upper, std::span<const WrightParam> lower,
                   Complex z, int k_start) {
  if (z == Complex{0.0, 0.0}) {
    if (k_start > 0) return {0.0, 0.0};
    const auto c = log_coefficient(upper, lower, 0);
    return c.zero ? Complex{0.0, 0.0} : std::exp(c.value);
  }
  const double log_abs_z = std::log(std::abs(z));
  const Complex unit = z / std::abs(z);
  Complex unit_pow{1.0, 0.0};
  for (int k = 0; k < k_start; ++k) unit_pow *= unit;

  CompensatedSum<Complex> acc;
  int small_run = 0;
  double last_mag = 0.0;
  for (int k = k_start; k < k_start + kMaxTerms; ++k) {
    const Complex t = assemble_term(log_coefficient(upper, lower, k), log_abs_z, unit_pow, k);
    unit_pow *= unit;
    acc.add(t);
    last_mag = std::abs(t);
    const double partial = std::abs(acc.value());
    if (last_mag < kRelStop * partial) {
      if (++small_run == 3) return acc.value();
    } else {
      small_run = 0;
    }
  }
  const Complex result = acc.value();
  if (last_mag <= 1e-10 * std::abs(result)) return result;
  std::ostringstream os;
  os << "series did not settle within " << kMaxTerms << " terms at z=" << z;
  throw Error(ErrorCode::NoConvergence, kModule, os.str());
}

void validate_param(const WrightParam& p, const char* side) {
  if (!std::isfinite(p.shift.real()) || !std::isfinite(p.shift.imag()) ||
      !std::isfinite(p.scale)) {
    throw Error(ErrorCode::InvalidArgument, kModule, std::string(side) + " parameter not finite");
  }
  if (p.scale == 0.0) {
    throw Error(ErrorCode::InvalidArgument, kModule, std::string(side) + " scale must be non-zero");
  }
}

}  // namespace

WrightSpec::WrightSpec(std::vector<WrightParam> upper, std::vector<WrightParam> lower)
    : upper_(std::move(upper)), lower_(std::move(lower)) {
  for (const auto& a : upper_) validate_param(a, "upper");
  for (const auto& b : lower_) validate_param(b, "lower");
}

ConvergenceVerdict convergence(const WrightSpec& spec) {
  ConvergenceVerdict v;
  double sum_upper = 0.0;
  double sum_lower = 0.0;
  for (const auto& a : spec.upper()) sum_upper += a.scale;
  for (const auto& b : spec.lower()) sum_lower += b.scale;
  v.delta = sum_lower - sum_upper;
  if (v.delta > -1.0 + 1e-12) {
    v.radius = std::numeric_limits<double>::infinity();
  } else if (v.delta >= -1.0 - 1e-12) {
    double log_r = 0.0;
    for (const auto& a : spec.upper()) log_r -= a.scale * std::log(std::abs(a.scale));
    for (const auto& b : spec.lower()) log_r += b.scale * std::log(std::abs(b.scale));
    v.radius = std::exp(log_r);
  } else {
    v.radius = 0.0;
  }
  return v;
}

Complex term(const WrightSpec& spec, Complex z, int k) {
  const auto c = log_coefficient(spec.upper(), spec.lower(), k);
  if (c.zero) return {0.0, 0.0};
  if (z == Complex{0.0, 0.0}) return k == 0 ? std::exp(c.value) : Complex{0.0, 0.0};
  Complex unit_pow{1.0, 0.0};
  const Complex unit = z / std::abs(z);
  for (int i = 0; i < k; ++i) unit_pow *= unit;
  return assemble_term(c, std::log(std::abs(z)), unit_pow, k);
}

Complex eval(const WrightSpec& spec, Complex z) {
  const auto verdict = convergence(spec);
  if (!verdict.convergent_at(z)) {
    std::ostringstream os;
    os << "|z|=" << std::abs(z) << " outside convergence radius " << verdict.radius
       << " (delta=" << verdict.delta << ")";
    throw Error(ErrorCode::DivergentInput, kModule, os.str());
  }
  return sum_series(spec.upper(), spec.lower(), z, 0);
}

Complex mittag_leffler(double alpha, double beta, Complex z) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, kModule, "alpha must be positive");
  return eval(WrightSpec({{1.0, 1.0}}, {{beta, alpha}}), z);
}

Complex classical_wright(Complex z, double alpha, double beta) {
  if (!(alpha > -1.0)) throw Error(ErrorCode::InvalidArgument, kModule, "alpha must exceed -1");
  // alpha = 0 is legal here although WrightSpec forbids zero scales.
  const WrightParam lower{Complex{beta, 0.0}, alpha};
  return sum_series({}, std::span<const WrightParam>(&lower, 1), z, 1);
}

}  // namespace fracsol::wright
