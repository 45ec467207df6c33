#include <gtest/gtest.h>

#include <cmath>

#include "fracsol/error.hpp"
#include "fracsol/frac_series.hpp"

using fracsol::Complex;
using fracsol::ErrorCode;
namespace s = fracsol::series;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const fracsol::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(FracSeries, AdditionAlignsLattices) {
  const s::FracPowerSeries a(0.5, 1.0, {1.0, 2.0, 3.0});
  const s::FracPowerSeries b(1.5, 1.0, {10.0, 20.0});
  const auto c = a + b;
  EXPECT_DOUBLE_EQ(c.gamma0(), 0.5);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.coeffs()[0], Complex(1.0));
  EXPECT_EQ(c.coeffs()[1], Complex(12.0));
  EXPECT_EQ(c.coeffs()[2], Complex(23.0));
  EXPECT_EQ(code_of([&] { (void)(a + s::FracPowerSeries(0.75, 1.0, {1.0})); }), ErrorCode::ExponentMisalignment);
  EXPECT_EQ(code_of([&] { (void)(a + s::FracPowerSeries(0.5, 0.5, {1.0})); }), ErrorCode::ExponentMisalignment);
}

TEST(FracSeries, ScalarMultiplication) {
  auto a = Complex{0.0, 2.0} * s::FracPowerSeries(0.0, 1.0, {1.0, -1.0});
  EXPECT_EQ(a.coeffs()[1], Complex(0.0, -2.0));
}

TEST(FracSeries, CharacteristicMonomials) {
  // a2 s(s-1) + a1 s + a0
  const auto m = s::characteristic_monomials({5.0, 6.0, 2.0});
  ASSERT_EQ(m.size(), 3u);
  EXPECT_DOUBLE_EQ(m[0], 5.0);
  EXPECT_DOUBLE_EQ(m[1], 4.0);
  EXPECT_DOUBLE_EQ(m[2], 2.0);
  // third order: a3 s(s-1)(s-2) = a3 (s^3 - 3 s^2 + 2 s)
  const auto m3 = s::characteristic_monomials({0.0, 0.0, 0.0, 1.0});
  EXPECT_DOUBLE_EQ(m3[1], 2.0);
  EXPECT_DOUBLE_EQ(m3[2], -3.0);
  EXPECT_DOUBLE_EQ(m3[3], 1.0);
}

TEST(FracSeries, RootsSortedAndPolished) {
  const auto r2 = s::polynomial_roots({2.0, -3.0, 1.0});  // (s-1)(s-2)
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_NEAR(r2[0].real(), 2.0, 1e-14);
  EXPECT_NEAR(r2[1].real(), 1.0, 1e-14);
  EXPECT_EQ(r2[0].imag(), 0.0);

  const auto r3 = s::polynomial_roots({-6.0, 11.0, -6.0, 1.0});  // (s-1)(s-2)(s-3)
  ASSERT_EQ(r3.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(r3[i].real(), 3.0 - i, 1e-12);

  const auto rc = s::polynomial_roots({2.0, 2.0, 1.0});  // s = -1 +- i
  EXPECT_NEAR(rc[0].real(), -1.0, 1e-14);
  EXPECT_NEAR(std::abs(rc[0].imag()), 1.0, 1e-14);
  EXPECT_GT(rc[0].imag(), rc[1].imag());

  // cancellation-prone quadratic
  const auto rs = s::polynomial_roots({1.0, -1e8, 1.0});
  EXPECT_NEAR(rs[1].real() / 1e-8, 1.0, 1e-12);
}

TEST(FracSeries, EulerOperatorForms) {
  const s::EulerPolynomialOperator op({5.0, 6.0, 2.0}, 1);
  EXPECT_EQ(op.order(), 2);
  EXPECT_EQ(op.time_weight(), 1);
  EXPECT_DOUBLE_EQ(op.leading(), 2.0);
  for (Complex x : {Complex{0.3}, Complex{-1.5, 0.4}, Complex{4.0}}) {
    EXPECT_LT(std::abs(op.characteristic(x) - op.factored(x)), 1e-12 * std::max(1.0, std::abs(op.characteristic(x))));
  }
  EXPECT_EQ(code_of([] { s::EulerPolynomialOperator({1.0, 0.0}, 0); }), ErrorCode::DegenerateLeading);
  const s::EulerPolynomialOperator constant({3.0}, 2);
  EXPECT_EQ(constant.order(), 0);
  EXPECT_TRUE(constant.roots().empty());
}

TEST(FracSeries, RiemannLiouvillePowerRule) {
  const s::FracPowerSeries f(1.0, 1.0, {1.0});
  const auto d = s::rl_derivative(f, 0.5);
  EXPECT_DOUBLE_EQ(d.gamma0(), 0.5);
  EXPECT_NEAR(d.coeffs()[0].real(), 1.0 / std::tgamma(1.5), 1e-15);
  // D^alpha z^(alpha-1) = 0
  const auto zero = s::rl_derivative(s::FracPowerSeries(-0.3, 1.0, {1.0, 1.0}), 0.7);
  EXPECT_EQ(zero.coeffs()[0], Complex{});
  EXPECT_NEAR(zero.coeffs()[1].real(), std::tgamma(1.7) / std::tgamma(1.0), 1e-14);
  EXPECT_EQ(code_of([] { (void)s::rl_derivative(s::FracPowerSeries(-1.0, 1.0, {1.0}), 0.5); }),
            ErrorCode::ExponentOutOfRange);
  // a leading zero coefficient does not trigger the range check
  EXPECT_NO_THROW((void)s::rl_derivative(s::FracPowerSeries(-1.0, 1.0, {0.0, 1.0}), 0.5));
}

TEST(FracSeries, EulerApplyMultipliesCharacteristic) {
  const s::EulerPolynomialOperator op({0.0, 1.0}, 2);  // z^2 (z d/dz)
  const auto out = s::euler_apply(op, s::FracPowerSeries(0.5, 1.0, {1.0, 1.0}));
  EXPECT_DOUBLE_EQ(out.gamma0(), 2.5);
  EXPECT_NEAR(out.coeffs()[0].real(), 0.5, 1e-15);
  EXPECT_NEAR(out.coeffs()[1].real(), 1.5, 1e-15);
}

TEST(FracSeries, WrightSeriesAndEvaluation) {
  // exp(z) = 1Psi1[(1,1);(1,1)]
  const fracsol::wright::WrightSpec spec({{1.0, 1.0}}, {{1.0, 1.0}});
  const auto e = s::wright_series(spec, 1.0, 0.0, 1.0, 40);
  EXPECT_NEAR(s::eval_series(e, 1.0).real(), std::exp(1.0), 1e-14);
  EXPECT_NEAR(s::eval_series(e, 0.25).real(), std::exp(0.25), 1e-15);
  const auto short_series = s::wright_series(spec, 1.0, 0.0, 1.0, 4);
  EXPECT_EQ(code_of([&] { (void)s::eval_series(short_series, 30.0); }), ErrorCode::NoConvergence);
}

TEST(FracSeries, GammaProductIdentity) {
  for (double a : {0.3, 1.0, 2.7}) {
    for (int m : {1, 3, 5}) {
      for (double b : {-2.4, 0.1, 2.9}) {
        const auto sides = s::gamma_product_identity_check(a, m, b);
        EXPECT_LT(sides.rel_err(), 1e-12) << a << " " << m << " " << b;
        EXPECT_LT(std::abs(sides.lhs - sides.rhs), 1e-11 * std::abs(sides.rhs));
      }
    }
  }
  EXPECT_EQ(code_of([] { (void)s::gamma_product_identity_check(1.0, 1, -2.0); }), ErrorCode::PoleError);
  EXPECT_EQ(code_of([] { (void)s::gamma_product_identity_check(0.0, 1, 0.5); }), ErrorCode::InvalidArgument);
}
