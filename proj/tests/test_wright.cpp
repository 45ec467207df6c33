#include <gtest/gtest.h>

#include <cmath>

#include "fracsol/error.hpp"
#include "fracsol/wright.hpp"

using fracsol::Complex;
namespace w = fracsol::wright;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Wright, MittagLefflerAtZero) {
  EXPECT_NEAR(w::mittag_leffler(1.0, 1.0, 0.0).real(), 1.0, 1e-15);
  EXPECT_NEAR(w::mittag_leffler(0.7, 2.0, 0.0).real(), 1.0, 1e-15);  // 1/Gamma(2)
}

TEST(Wright, MittagLefflerExponentialAndCosh) {
  for (double x = -5.0; x <= 5.0; x += 0.5) EXPECT_LT(rel(w::mittag_leffler(1.0, 1.0, x), std::exp(x)), 1e-10);
  for (double x = 0.0; x <= 3.0; x += 0.25) {
    EXPECT_LT(rel(w::mittag_leffler(2.0, 1.0, x * x), std::cosh(x)), 1e-10);
  }
}

TEST(Wright, MittagLefflerReferenceValues) {
  // E_{1/2}(-2) = e^4 erfc(2); the others are direct high-precision sums
  EXPECT_LT(rel(w::mittag_leffler(0.5, 1.0, -2.0), 0.25539567631050574387), 1e-10);
  EXPECT_LT(rel(w::mittag_leffler(1.5, 1.0, 1.3), 2.3058138059207707594), 1e-12);
  EXPECT_LT(rel(w::mittag_leffler(0.7, 1.2, -3.5), 0.16963522343831379228), 1e-9);
}

TEST(Wright, GeneralizedComplexShift) {
  const w::WrightSpec spec({{{1.0, 0.5}, 0.6}, {0.8, 0.3}}, {{1.7, 1.4}});
  const Complex ref{1.2895663459494859291, -0.23139741697637744479};
  EXPECT_LT(rel(w::eval(spec, 0.7), ref), 1e-12);
}

TEST(Wright, ClassicalExcludesZeroTerm) {
  EXPECT_LT(rel(w::classical_wright(1.0, 0.5, 1.0), 1.7773451005009957392), 1e-12);
  EXPECT_EQ(w::classical_wright(0.0, 0.5, 1.0), Complex{});
}

TEST(Wright, TermVanishesOnLowerPole) {
  // 1/Gamma(-1 + k) is zero for k = 0, 1
  const w::WrightSpec spec({{1.0, 1.0}}, {{-1.0, 1.0}});
  EXPECT_EQ(w::term(spec, 0.3, 0), Complex{});
  EXPECT_EQ(w::term(spec, 0.3, 1), Complex{});
  EXPECT_NE(w::term(spec, 0.3, 2), Complex{});
}

TEST(Wright, ConvergenceVerdict) {
  const auto entire = w::convergence(w::WrightSpec({{1.0, 1.0}}, {{1.0, 0.5}}));
  EXPECT_TRUE(entire.entire());
  EXPECT_NEAR(entire.delta, -0.5, 1e-15);
  // delta = -1: finite radius prod|alpha|^-alpha prod|beta|^beta = 1
  const auto finite = w::convergence(w::WrightSpec({{1.0, 1.0}, {1.0, 1.0}}, {{1.0, 1.0}}));
  EXPECT_FALSE(finite.entire());
  EXPECT_NEAR(finite.radius, 1.0, 1e-14);
  EXPECT_TRUE(finite.convergent_at(0.5));
  EXPECT_FALSE(finite.convergent_at(1.5));
}

TEST(Wright, DivergentInputThrows) {
  const w::WrightSpec spec({{1.0, 1.0}, {1.0, 1.0}}, {{1.0, 1.0}});
  try {
    (void)w::eval(spec, 2.0);
    FAIL() << "expected DivergentInput";
  } catch (const fracsol::Error& e) {
    EXPECT_EQ(e.code(), fracsol::ErrorCode::DivergentInput);
    EXPECT_EQ(e.module(), "wright");
  }
  // inside the disc it is the geometric series 1/(1-z)
  EXPECT_LT(rel(w::eval(spec, 0.5), 2.0), 1e-12);
}

TEST(Wright, RejectsZeroScale) { EXPECT_THROW(w::WrightSpec({{1.0, 0.0}}, {}), fracsol::Error); }
