#include <gtest/gtest.h>

#include <cmath>

#include "fracsol/error.hpp"
#include "fracsol/solver_ode.hpp"
#include "fracsol/verify.hpp"

using fracsol::Complex;
using fracsol::ErrorCode;
namespace ode = fracsol::ode;

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

TEST(SolverOde, CharacteristicPolynomialExamples) {
  auto cp = ode::characteristic_poly({1.0, 0, {0.0, 0.0, 1.0}});
  ASSERT_EQ(cp.roots.size(), 2u);
  EXPECT_NEAR(cp.roots[0].real(), 1.0, 1e-14);
  EXPECT_NEAR(cp.roots[1].real(), 0.0, 1e-14);

  cp = ode::characteristic_poly({0.5, 0, {-2.0, 1.0}});
  ASSERT_EQ(cp.roots.size(), 1u);
  EXPECT_NEAR(cp.roots[0].real(), 2.0, 1e-14);

  cp = ode::characteristic_poly({1.0, 0, {0.0, 1.0, 1.0}});  // s^2: double root
  EXPECT_NEAR(std::abs(cp.roots[0]), 0.0, 1e-7);
  EXPECT_NEAR(std::abs(cp.roots[1]), 0.0, 1e-7);
  EXPECT_LT(cp.max_residual, 1e-12);
}

TEST(SolverOde, Validation) {
  EXPECT_EQ(code_of([] { ode::validate({0.0, 0, {1.0, 1.0}}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { ode::validate({0.5, -1, {1.0, 1.0}}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { ode::validate({0.5, 0, {1.0}}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { ode::validate({0.5, 0, {1.0, 0.0}}); }), ErrorCode::DegenerateLeading);
  EXPECT_EQ(ode::order({0.5, 0, {1.0, 2.0, 3.0}}), 2);
}

TEST(SolverOde, SmallAlphaStructure) {
  const ode::OdeProblem p{0.8, 1, {0.0, 1.5, 1.0}};  // roots {0, -0.5}
  const auto sol = ode::solve(p);
  ASSERT_EQ(sol.branch, ode::Branch::SmallAlpha);
  ASSERT_TRUE(sol.small.has_value());
  EXPECT_NEAR(sol.small->divisor, 5.832, 1e-12);
  EXPECT_NEAR(sol.small->power, -1.8, 1e-15);
  const auto& spec = sol.small->spec;
  EXPECT_EQ(spec.q(), 3);
  EXPECT_EQ(spec.m(), 3);
  EXPECT_NEAR(spec.upper()[0].shift, 1.0, 0.0);
  EXPECT_NEAR(spec.upper()[0].scale, 1.8, 1e-15);
  EXPECT_NEAR(spec.lower()[0].shift, 0.0, 1e-15);
  EXPECT_NEAR(spec.lower()[1].shift, 0.5 / 1.8, 1e-15);
  EXPECT_NEAR(spec.lower()[2].shift, 1.0 / 1.8, 1e-15);
  // the H-function decays for large argument
  EXPECT_GT(fracsol::fox_h::eval_mellin_barnes(spec, 5.0), fracsol::fox_h::eval_mellin_barnes(spec, 10.0));
  EXPECT_GT(fracsol::fox_h::eval_mellin_barnes(spec, 10.0), 0.0);
  const ode::OdeProblem p0{0.5, 0, {0.0, 0.0, 1.0}};
  EXPECT_EQ(ode::solve(p0).small->spec.q(), 2);
}

TEST(SolverOde, SmallAlphaComplexRootsRejected) {
  const ode::OdeProblem p{0.5, 0, {2.0, 3.0, 1.0}};  // s^2 + 2s + 2
  EXPECT_EQ(code_of([&] { (void)ode::solve(p); }), ErrorCode::ComplexRoots);
}

TEST(SolverOde, BranchSelection) {
  EXPECT_EQ(code_of([] { (void)ode::solve({2.0, 0, {0.0, 0.0, 1.0}}); }), ErrorCode::BranchMismatch);
  EXPECT_EQ(code_of([] { (void)ode::solve_small_alpha({2.5, 0, {0.0, 0.0, 1.0}}); }), ErrorCode::BranchMismatch);
  EXPECT_EQ(code_of([] { (void)ode::solve_large_alpha({1.5, 0, {0.0, 0.0, 1.0}}); }), ErrorCode::BranchMismatch);
  EXPECT_EQ(code_of([] { (void)ode::solve({2.5, 0, {0.0, 0.0, 1.0}}, {1.0}); }), ErrorCode::InvalidArgument);
}

TEST(SolverOde, LargeAlphaMembers) {
  const ode::OdeProblem p{2.5, 0, {0.3, 1.0, 1.0}};
  const auto sol = ode::solve(p);
  ASSERT_EQ(sol.branch, ode::Branch::LargeAlpha);
  ASSERT_EQ(sol.members.size(), 3u);
  EXPECT_EQ(sol.constants.size(), 3u);
  EXPECT_NEAR(sol.members[0].gamma0, 1.5, 1e-15);
  EXPECT_NEAR(sol.members[0].rho, 2.5, 1e-15);
  for (const auto& m : sol.members) {
    const auto c = fracsol::wright::convergence(m.spec);
    EXPECT_NEAR(c.delta, p.alpha - 2.0 - 1.0, 1e-12);
    EXPECT_TRUE(c.entire());
  }
}

TEST(SolverOde, LargeAlphaCoefficientResidual) {
  const ode::OdeProblem p{2.5, 1, {0.1, 0.7, 1.0}};
  const auto sol = ode::solve(p);
  const auto report = fracsol::verify::residual_ode_solution_coefficients(sol, 20);
  EXPECT_LT(report.max_rel_err, 1e-10);
  EXPECT_EQ(report.points.size(), 60u);
}

TEST(SolverOde, PerturbedMemberFailsResidual) {
  const ode::OdeProblem p{2.5, 1, {0.1, 0.7, 1.0}};
  const auto sol = ode::solve(p);
  auto member = sol.members[0];
  auto upper = member.spec.upper();
  upper[0].shift += 1e-3;
  member.spec = fracsol::wright::WrightSpec(upper, member.spec.lower());
  const auto report = fracsol::verify::residual_ode_coefficients(ode::member_series(member, 21),
                                                                 ode::right_side_operator(p), 2.5, 20);
  EXPECT_GT(report.max_rel_err, 1e-4);
}

TEST(SolverOde, LargeAlphaSmallArgumentLeadingTerm) {
  const ode::OdeProblem p{2.5, 0, {0.3, 1.0, 1.0}};
  const auto sol = ode::solve(p);
  for (const auto& m : sol.members) {
    const auto series = ode::member_series(m, 1);
    const double z = 1e-3;
    const Complex lead = series.coeffs()[0] * std::pow(z, m.gamma0);
    EXPECT_LT(std::abs(ode::evaluate_member(m, z) - lead) / std::abs(lead), 1e-2);
  }
}
