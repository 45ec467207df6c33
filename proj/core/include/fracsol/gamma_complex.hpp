#pragma once

#include <complex>

namespace fracsol {

using Complex = std::complex<double>;

namespace gamma {

/// Absolute distance below which an argument is treated as sitting on a pole.
inline constexpr double kPoleTolerance = 1e-14;

/// True when z lies within kPoleTolerance of 0, -1, -2, ...
bool near_pole(Complex z) noexcept;

/// log Gamma(z), continued analytically from the positive real axis (the
/// "loggamma" branch: imaginary part is continuous off the negative real axis).
///
/// Lanczos approximation (g = 607/128, 15 terms) for Re z >= 0.5, lifted by the
/// recurrence Gamma(z) = Gamma(z + n) / (z (z+1) ... (z+n-1)) for moderately
/// negative Re z, and by reflection far to the left.
///
/// Throws Error{PoleError} when z is within kPoleTolerance of a non-positive integer.
Complex ln_gamma(Complex z);

/// 1 / Gamma(z). Entire; exactly zero on (and within kPoleTolerance of) the poles.
Complex gamma_reciprocal(Complex z);

/// Gamma(p) / Gamma(q) for real arguments. Zero when q is a pole.
/// Throws Error{PoleError} when p is a non-positive integer.
double gamma_ratio(double p, double q);

}  // namespace gamma
}  // namespace fracsol
