#include "fracsol/gamma_complex.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fracsol/error.hpp"

namespace fracsol::gamma {
namespace {

constexpr std::string_view kModule = "gamma_complex";

// Lanczos coefficients for g = 607/128 (Godfrey), shifted form used with
// denominators z+1 .. z+14 and t = z + g + 1/2.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

const double kLogSqrtTwoPi = 0.5 * std::log(2.0 * std::numbers::pi);
const double kLogPi = std::log(std::numbers::pi);

// Below this real part the recurrence lift is replaced by reflection.
constexpr double kLiftLimit = -40.0;

Complex lanczos_ln_gamma(Complex z) {
  Complex ser = kLanczos[0];
  for (std::size_t j = 1; j < kLanczos.size(); ++j) {
    ser += kLanczos[j] / (z + static_cast<double>(j));
  }
  const Complex t = z + (kLanczosG + 0.5);
  return (z + 0.5) * std::log(t) - t + kLogSqrtTwoPi + std::log(ser) - std::log(z);
}

// log sin(pi z), modulo 2 pi i.
Complex log_sin_pi(Complex z) {
  const double k = std::round(z.real());
  const Complex r = z - k;
  Complex base;
  if (std::abs(r.imag()) < 15.0) {
    base = std::log(std::sin(std::numbers::pi * r));
  } else {
    // sin(pi r) = e^{-i pi r} (e^{2 i pi r} - 1) / (2i) for Im r > 0, mirrored otherwise.
    const bool upper = r.imag() > 0.0;
    const Complex w = upper ? r : std::conj(r);
    const Complex i{0.0, 1.0};
    Complex v = -i * std::numbers::pi * w +
                std::log((std::exp(2.0 * i * std::numbers::pi * w) - 1.0) / (2.0 * i));
    base = upper ? v : std::conj(v);
  }
  const bool odd = std::fmod(std::abs(k), 2.0) == 1.0;
  return odd ? base + Complex{0.0, std::numbers::pi} : base;
}

}  // namespace

bool near_pole(Complex z) noexcept {
  if (std::abs(z.imag()) >= kPoleTolerance) return false;
  if (z.real() > kPoleTolerance) return false;
  const double nearest = std::round(z.real());
  return nearest <= 0.0 && std::abs(z - Complex{nearest, 0.0}) < kPoleTolerance;
}

Complex ln_gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::InvalidArgument, kModule, "non-finite argument");
  }
  if (near_pole(z)) {
    std::ostringstream os;
    os << "argument " << z << " is a pole of Gamma";
    throw Error(ErrorCode::PoleError, kModule, os.str());
  }
  if (z.real() >= 0.5) return lanczos_ln_gamma(z);
  if (z.real() >= kLiftLimit) {
    const int n = static_cast<int>(std::ceil(0.5 - z.real()));
    Complex acc = lanczos_ln_gamma(z + static_cast<double>(n));
    for (int k = 0; k < n; ++k) acc -= std::log(z + static_cast<double>(k));
    return acc;
  }
  return kLogPi - log_sin_pi(z) - ln_gamma(1.0 - z);
}

Complex gamma_reciprocal(Complex z) {
  if (near_pole(z)) return {0.0, 0.0};
  return std::exp(-ln_gamma(z));
}

double gamma_ratio(double p, double q) {
  if (near_pole(Complex{p, 0.0})) {
    throw Error(ErrorCode::PoleError, kModule, "numerator argument is a pole of Gamma");
  }
  if (near_pole(Complex{q, 0.0})) return 0.0;
  return std::exp(ln_gamma(Complex{p, 0.0}) - ln_gamma(Complex{q, 0.0})).real();
}

}  // namespace fracsol::gamma
