#include "fracsol/fox_h.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracsol/error.hpp"
#include "fracsol/summation.hpp"

namespace fracsol::fox_h {
namespace {

constexpr std::string_view kModule = "fox_h";
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
// Far below the smallest subnormal; the O(1) constant of the envelope cannot lift it back.
constexpr double kUnderflowLog = -1000.0;

// log of the Gamma-product part of the integrand at s (z^s excluded).
// `zero` is set when a denominator Gamma sits on a pole.
struct LogTheta {
  Complex value;
  bool zero = false;
};

LogTheta log_theta(const HFunctionSpec& spec, Complex s) {
  LogTheta out{};
  const auto& up = spec.upper();
  const auto& lo = spec.lower();
  for (int i = 0; i < spec.p(); ++i) {
    if (i < spec.l()) {
      out.value += gamma::ln_gamma(1.0 - up[i].shift + up[i].scale * s);
    } else {
      const Complex arg = up[i].shift - up[i].scale * s;
      if (gamma::near_pole(arg)) return {{}, true};
      out.value -= gamma::ln_gamma(arg);
    }
  }
  for (int j = 0; j < spec.q(); ++j) {
    if (j < spec.m()) {
      out.value += gamma::ln_gamma(lo[j].shift - lo[j].scale * s);
    } else {
      const Complex arg = 1.0 - lo[j].shift + lo[j].scale * s;
      if (gamma::near_pole(arg)) return {{}, true};
      out.value -= gamma::ln_gamma(arg);
    }
  }
  return out;
}

// Leftmost right pole and rightmost left pole of the numerator Gammas.
struct PoleBounds {
  double right = kInf;
  double left = -kInf;
};

PoleBounds pole_bounds(const HFunctionSpec& spec) {
  PoleBounds b;
  for (int j = 0; j < spec.m(); ++j) {
    b.right = std::min(b.right, spec.lower()[j].shift / spec.lower()[j].scale);
  }
  for (int i = 0; i < spec.l(); ++i) {
    b.left = std::max(b.left, (spec.upper()[i].shift - 1.0) / spec.upper()[i].scale);
  }
  return b;
}

struct Line {
  double gamma;
  double distance;  // to the nearest numerator pole
};

Line default_line(const HFunctionSpec& spec) {
  const PoleBounds b = pole_bounds(spec);
  if (!(b.left < b.right - 1e-12)) {
    throw Error(ErrorCode::UnsupportedClass, kModule,
                "no vertical line separates the left and right pole sequences");
  }
  if (std::isinf(b.left)) return {b.right - 0.5, 0.5};
  if (std::isinf(b.right)) return {b.left + 0.5, 0.5};
  if (b.right - b.left >= 1.0) return {b.right - 0.5, 0.5};
  const double mid = 0.5 * (b.left + b.right);
  return {mid, mid - b.left};
}

void validate_argument(const HFunctionSpec& spec, double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw Error(ErrorCode::InvalidArgument, kModule, "argument must be finite and positive");
  }
  if (!convergence_params(spec).integrable()) {
    throw Error(ErrorCode::NonConvergent, kModule, "omega <= 0: contour integral diverges");
  }
}

// Running sum of Re exp(L - g0), re-based when a term would overflow.
class ScaledAccumulator {
 public:
  explicit ScaledAccumulator(double g0) : g0_(g0) {}

  void add(Complex log_term, double weight) {
    if (!std::isfinite(log_term.real())) return;
    if (log_term.real() > g0_ + 600.0) rebase(log_term.real());
    const double mag = weight * std::exp(log_term.real() - g0_);
    sum_.add(mag * std::cos(log_term.imag()));
    l1_.add(mag);
  }

  double sum() const { return sum_.value(); }
  double l1() const { return l1_.value(); }
  double g0() const { return g0_; }

 private:
  void rebase(double g_new) {
    const double f = std::exp(g0_ - g_new);
    const double s = sum_.value() * f;
    const double a = l1_.value() * f;
    sum_ = {};
    l1_ = {};
    sum_.add(s);
    l1_.add(a);
    g0_ = g_new;
  }

  double g0_;
  CompensatedSum<double> sum_;
  CompensatedSum<double> l1_;
};

std::string describe(const HFunctionSpec& spec) {
  std::ostringstream os;
  os << "H^{" << spec.m() << "," << spec.l() << "}_{" << spec.p() << "," << spec.q() << "}";
  return os.str();
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace

bool operator==(const HParam& a, const HParam& b) {
  return a.shift == b.shift && a.scale == b.scale;
}

bool operator==(const HFunctionSpec& a, const HFunctionSpec& b) {
  return a.m_ == b.m_ && a.l_ == b.l_ && a.upper_ == b.upper_ && a.lower_ == b.lower_;
}

HFunctionSpec::HFunctionSpec(int m, int l, std::vector<HParam> upper, std::vector<HParam> lower)
    : m_(m), l_(l), upper_(std::move(upper)), lower_(std::move(lower)) {
  if (m_ < 0 || l_ < 0 || m_ > q() || l_ > p()) {
    throw Error(ErrorCode::InvalidArgument, kModule, "need 0 <= m <= q and 0 <= l <= p");
  }
  if (m_ == 0 && l_ == 0) {
    throw Error(ErrorCode::InvalidArgument, kModule, "m and l cannot both be zero");
  }
  auto check = [](const std::vector<HParam>& params) {
    for (const auto& v : params) {
      if (!std::isfinite(v.shift) || !std::isfinite(v.scale) || !(v.scale > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, kModule,
                    "parameters must be finite with positive scales");
      }
    }
  };
  check(upper_);
  check(lower_);
}

HConvergence convergence_params(const HFunctionSpec& spec) {
  HConvergence c{};
  double log_mu = 0.0;
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (int i = 0; i < spec.p(); ++i) {
    const auto& v = spec.upper()[i];
    c.omega += i < spec.l() ? v.scale : -v.scale;
    c.nu -= v.scale;
    log_mu += v.scale * std::log(v.scale);
    sum_a += v.shift;
  }
  for (int j = 0; j < spec.q(); ++j) {
    const auto& v = spec.lower()[j];
    c.omega += j < spec.m() ? v.scale : -v.scale;
    c.nu += v.scale;
    log_mu -= v.scale * std::log(v.scale);
    sum_b += v.shift;
  }
  c.mu = std::exp(log_mu);
  c.delta = sum_b - sum_a + 0.5 * static_cast<double>(spec.p() - spec.q());
  c.arg_bound = 0.5 * kPi * c.omega;
  return c;
}

double ScaledValue::value() const noexcept {
  if (mantissa == 0.0) return 0.0;
  return mantissa * std::exp(log_scale);
}

double ScaledValue::log_abs() const noexcept {
  if (mantissa == 0.0) return -kInf;
  return std::log(std::abs(mantissa)) + log_scale;
}

ScaledValue ScaledValue::scaled_by(double factor) const noexcept {
  if (factor == 0.0 || mantissa == 0.0) return {0.0, 0.0};
  return {mantissa * (factor < 0 ? -1.0 : 1.0), log_scale + std::log(std::abs(factor))};
}

double relative_difference(const ScaledValue& a, const ScaledValue& b) noexcept {
  const double la = a.log_abs();
  const double lb = b.log_abs();
  if (std::isinf(la) && std::isinf(lb)) return 0.0;
  const double ref = std::max(la, lb);
  const double va = std::isinf(la) ? 0.0 : std::copysign(std::exp(la - ref), a.mantissa);
  const double vb = std::isinf(lb) ? 0.0 : std::copysign(std::exp(lb - ref), b.mantissa);
  return std::abs(va - vb) / std::max(std::abs(va), std::abs(vb));
}

ScaledValue eval_mellin_barnes_scaled(const HFunctionSpec& spec, double z,
                                      const QuadratureOptions& options) {
  validate_argument(spec, z);
  const HConvergence conv = convergence_params(spec);
  const Line base = default_line(spec);
  const double log_z = std::log(z);

  // Move the line towards the saddle of |integrand| when z is large enough for
  // cancellation along the default line to swamp the result.
  double gamma0 = base.gamma;
  double width = 1.0;
  if (spec.l() == 0 && conv.nu > 0.0) {
    const double saddle = -std::exp((std::log(conv.mu) + log_z) / conv.nu);
    if (saddle < gamma0) {
      gamma0 = saddle;
      width = std::max(1.0, std::sqrt(std::abs(saddle) / conv.nu));
    }
  } else if (spec.m() == 0 && conv.nu < 0.0) {
    const double saddle = std::exp((std::log(conv.mu) + log_z) / conv.nu);
    if (saddle > gamma0) {
      gamma0 = saddle;
      width = std::max(1.0, std::sqrt(saddle / -conv.nu));
    }
  }

  auto log_integrand = [&](double y) {
    const Complex s{gamma0, y};
    const LogTheta th = log_theta(spec, s);
    if (th.zero) return Complex{-kInf, 0.0};
    return th.value + s * log_z;
  };

  double h = options.initial_step * width;
  const double t0 = options.initial_half_width * width;
  long n = std::lround(t0 / h);

  const Complex f0 = log_integrand(0.0);
  double g0 = f0.real();
  if (!std::isfinite(g0)) g0 = log_integrand(h).real();
  if (!std::isfinite(g0)) g0 = 0.0;

  ScaledAccumulator acc(g0);
  acc.add(f0, 0.5);
  for (long k = 1; k <= n; ++k) acc.add(log_integrand(static_cast<double>(k) * h), 1.0);
  double estimate = h * acc.sum() / kPi;
  double estimate_scale = acc.g0();

  for (int level = 0; level < options.max_refinements; ++level) {
    const double h_new = 0.5 * h;
    for (long k = 1; k <= 2 * n; k += 2) {
      acc.add(log_integrand(static_cast<double>(k) * h_new), 1.0);
    }
    for (long k = 2 * n + 1; k <= 4 * n; ++k) {
      acc.add(log_integrand(static_cast<double>(k) * h_new), 1.0);
    }
    h = h_new;
    n *= 4;
    const double g = acc.g0();
    const double refined = h * acc.sum() / kPi;
    const double previous = estimate * std::exp(estimate_scale - g);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * h * acc.l1() / kPi;
    const double diff = std::abs(refined - previous);
    if (diff <= options.rel_tol * std::abs(refined) || diff <= floor) {
      return {refined, g};
    }
    estimate = refined;
    estimate_scale = g;
  }
  throw Error(ErrorCode::QuadratureFailure, kModule,
              "trapezoid refinement did not settle for " + describe(spec));
}

double eval_mellin_barnes(const HFunctionSpec& spec, double z, const QuadratureOptions& options) {
  validate_argument(spec, z);
  if (spec.l() == 0) {
    const HConvergence c = convergence_params(spec);
    if (c.nu > 0.0) {
      const double log_envelope = -c.nu * std::pow(c.mu * z, 1.0 / c.nu) +
                                  (2.0 * c.delta + 1.0) / (2.0 * c.nu) * std::log(z);
      if (log_envelope < kUnderflowLog) return 0.0;
    }
  }
  return eval_mellin_barnes_scaled(spec, z, options).value();
}

ContourGrid::ContourGrid(const HFunctionSpec& spec, double z_min, double z_max) {
  if (!(z_min > 0.0) || !(z_max >= z_min)) {
    throw Error(ErrorCode::InvalidArgument, kModule, "grid range must satisfy 0 < z_min <= z_max");
  }
  const HConvergence conv = convergence_params(spec);
  if (!conv.integrable()) {
    throw Error(ErrorCode::NonConvergent, kModule, "omega <= 0: contour integral diverges");
  }
  const Line line = default_line(spec);
  gamma_ = line.gamma;
  // Aliasing error of the trapezoid rule ~ exp(-2 pi d / h) z^{+-d}: keep it near 1e-16.
  const double spread = std::min(60.0, std::max(std::abs(std::log(z_min)), std::abs(std::log(z_max))));
  step_ = std::min(0.05, 2.0 * kPi * line.distance / (37.0 + line.distance * spread));
  const double half_width = std::max(40.0, 60.0 / conv.omega);
  const auto n = static_cast<std::size_t>(std::ceil(half_width / step_));
  weights_.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const LogTheta th = log_theta(spec, Complex{gamma_, static_cast<double>(k) * step_});
    weights_.push_back(th.zero ? Complex{} : std::exp(th.value));
  }
  weights_.front() *= 0.5;
}

double ContourGrid::operator()(double z) const {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw Error(ErrorCode::InvalidArgument, kModule, "argument must be finite and positive");
  }
  const double phase = step_ * std::log(z);
  const Complex rot = std::polar(1.0, phase);
  Complex p{1.0, 0.0};
  double sum = 0.0;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (k % 64 == 0) p = std::polar(1.0, phase * static_cast<double>(k));
    sum += weights_[k].real() * p.real() - weights_[k].imag() * p.imag();
    p *= rot;
  }
  return step_ * sum / kPi * std::pow(z, gamma_);
}

HFunctionSpec invert_argument(const HFunctionSpec& spec) {
  std::vector<HParam> upper;
  std::vector<HParam> lower;
  upper.reserve(spec.lower().size());
  lower.reserve(spec.upper().size());
  for (const auto& b : spec.lower()) upper.push_back({1.0 - b.shift, b.scale});
  for (const auto& a : spec.upper()) lower.push_back({1.0 - a.shift, a.scale});
  return HFunctionSpec(spec.l(), spec.m(), std::move(upper), std::move(lower));
}

HFunctionSpec power_scale(const HFunctionSpec& spec, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw Error(ErrorCode::InvalidArgument, kModule, "power_scale needs k > 0");
  }
  auto upper = spec.upper();
  auto lower = spec.lower();
  for (auto& v : upper) v.scale *= k;
  for (auto& v : lower) v.scale *= k;
  return HFunctionSpec(spec.m(), spec.l(), std::move(upper), std::move(lower));
}

HFunctionSpec shift_by_power(const HFunctionSpec& spec, double sigma) {
  auto upper = spec.upper();
  auto lower = spec.lower();
  for (auto& v : upper) v.shift += sigma * v.scale;
  for (auto& v : lower) v.shift += sigma * v.scale;
  return HFunctionSpec(spec.m(), spec.l(), std::move(upper), std::move(lower));
}

GaussReduction gauss_multiplication_reduce(const HFunctionSpec& spec, int r) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, kModule, "r must be a positive integer");
  const double rd = static_cast<double>(r);

  auto upper = spec.upper();
  int upper_hit = -1;
  for (int i = spec.l(); i < spec.p(); ++i) {
    if (near(upper[i].shift, 1.0) && near(upper[i].scale, rd)) upper_hit = i;
  }
  if (upper_hit < 0) {
    throw Error(ErrorCode::ShapeMismatch, kModule, "no denominator upper entry (1, r)");
  }
  upper.erase(upper.begin() + upper_hit);

  std::vector<bool> used(spec.lower().size(), false);
  for (int j = 1; j <= r; ++j) {
    bool found = false;
    for (int i = 0; i < spec.m() && !found; ++i) {
      const auto& v = spec.lower()[i];
      if (!used[i] && near(v.shift, static_cast<double>(j) / rd) && near(v.scale, 1.0)) {
        used[i] = true;
        found = true;
      }
    }
    if (!found) {
      throw Error(ErrorCode::ShapeMismatch, kModule, "missing numerator lower entry (j/r, 1)");
    }
  }
  std::vector<HParam> lower;
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (!used[i]) lower.push_back(spec.lower()[i]);
  }
  const int m_new = spec.m() - r;
  if (m_new == 0 && spec.l() == 0) {
    throw Error(ErrorCode::ShapeMismatch, kModule, "reduction leaves no numerator Gamma factors");
  }
  return {HFunctionSpec(m_new, spec.l(), std::move(upper), std::move(lower)),
          std::pow(2.0 * kPi, 0.5 * (rd - 1.0)) / std::sqrt(rd), std::pow(rd, rd)};
}

HFunctionSpec gauss_multiplication_expand(const HFunctionSpec& spec, int r) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, kModule, "r must be a positive integer");
  const double rd = static_cast<double>(r);
  auto upper = spec.upper();
  upper.push_back({1.0, rd});
  std::vector<HParam> lower;
  for (int j = 1; j <= r; ++j) lower.push_back({static_cast<double>(j) / rd, 1.0});
  lower.insert(lower.end(), spec.lower().begin(), spec.lower().end());
  return HFunctionSpec(spec.m() + r, spec.l(), std::move(upper), std::move(lower));
}

double asymptotic_estimate(const HFunctionSpec& spec, double z) {
  if (spec.l() != 0) {
    throw Error(ErrorCode::UnsupportedClass, kModule, "envelope applies to l = 0 only");
  }
  const HConvergence c = convergence_params(spec);
  if (!(c.nu > 0.0)) throw Error(ErrorCode::NonDecaying, kModule, "nu <= 0: no exponential decay");
  if (!(z > 0.0)) throw Error(ErrorCode::InvalidArgument, kModule, "argument must be positive");
  const double inv = 1.0 / c.nu;
  return std::exp(-c.nu * std::pow(c.mu * z, inv) + (2.0 * c.delta + 1.0) / (2.0 * c.nu) * std::log(z));
}

namespace detail {

double residue_series(const HFunctionSpec& spec, double z, int terms_per_pole) {
  if (!(z > 0.0)) throw Error(ErrorCode::InvalidArgument, kModule, "argument must be positive");
  const double log_z = std::log(z);
  CompensatedSum<double> total;
  for (int j = 0; j < spec.m(); ++j) {
    const HParam bj = spec.lower()[j];
    CompensatedSum<double> partial;
    int small_run = 0;
    for (int k = 0; k < terms_per_pole; ++k) {
      const double s0 = (bj.shift + k) / bj.scale;
      Complex log_term = -std::lgamma(k + 1.0) - std::log(bj.scale) + s0 * log_z;
      bool zero = false;
      for (int i = 0; i < spec.m(); ++i) {
        if (i == j) continue;
        const double arg = spec.lower()[i].shift - spec.lower()[i].scale * s0;
        if (arg <= 0.5 && std::abs(arg - std::round(arg)) < 1e-8) {
          throw Error(ErrorCode::UnsupportedClass, kModule, "pole collision: residues not simple");
        }
        log_term += gamma::ln_gamma(arg);
      }
      for (int i = 0; i < spec.p() && !zero; ++i) {
        const auto& a = spec.upper()[i];
        if (i < spec.l()) {
          const double arg = 1.0 - a.shift + a.scale * s0;
          if (gamma::near_pole(arg)) {
            throw Error(ErrorCode::UnsupportedClass, kModule, "pole collision with a left pole");
          }
          log_term += gamma::ln_gamma(arg);
        } else {
          const double arg = a.shift - a.scale * s0;
          if (gamma::near_pole(arg)) zero = true; else log_term -= gamma::ln_gamma(arg);
        }
      }
      for (int i = spec.m(); i < spec.q() && !zero; ++i) {
        const double arg = 1.0 - spec.lower()[i].shift + spec.lower()[i].scale * s0;
        if (gamma::near_pole(arg)) zero = true; else log_term -= gamma::ln_gamma(arg);
      }
      const double term = zero ? 0.0 : (k % 2 == 0 ? 1.0 : -1.0) * (std::exp(log_term)).real();
      partial.add(term);
      if (k > 10 && std::abs(term) < 1e-17 * std::abs(partial.value())) {
        if (++small_run == 3) break;
      } else {
        small_run = 0;
      }
    }
    total.add(partial.value());
  }
  return total.value();
}

}  // namespace detail
}  // namespace fracsol::fox_h
