#pragma once

#include <cmath>
#include <complex>

namespace fracsol {

/// Neumaier (improved Kahan-Babuska) compensated accumulator.
template <typename T>
class CompensatedSum {
 public:
  void add(T value) noexcept {
    T t = sum_ + value;
    if (magnitude(sum_) >= magnitude(value)) {
      comp_ += (sum_ - t) + value;
    } else {
      comp_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  T value() const noexcept { return sum_ + comp_; }

 private:
  static double magnitude(double v) noexcept { return std::abs(v); }
  static double magnitude(const std::complex<double>& v) noexcept {
    return std::abs(v.real()) + std::abs(v.imag());
  }

  T sum_{};
  T comp_{};
};

// Complex values are compensated per component.
template <>
class CompensatedSum<std::complex<double>> {
 public:
  void add(std::complex<double> value) noexcept {
    re_.add(value.real());
    im_.add(value.imag());
  }
  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<double> re_;
  CompensatedSum<double> im_;
};

}  // namespace fracsol
