#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "redint/apposition.hpp"
#include "redint/reduction_lab.hpp"

using namespace redint;

namespace {

const cplx I{0.0, 1.0};

GroupElement torus(std::initializer_list<double> phases) {
  const int n = static_cast<int>(phases.size());
  Matrix m = Matrix::Zero(n, n);
  int k = 0;
  for (double p : phases) m(k, k) = std::exp(I * p), ++k;
  return GroupElement::from_matrix(m);
}

}  // namespace

TEST(Lambda, SmallCases) {
  Matrix l2(2, 2);
  l2 << 0, I, I, 0;
  EXPECT_LT((lambda_matrix(2).matrix() - l2).norm(), 1e-15);

  const cplx c = std::exp(I * (2.0 * std::numbers::pi / 3.0));
  Matrix l3 = Matrix::Zero(3, 3);
  l3(2, 0) = l3(0, 1) = l3(1, 2) = c;
  EXPECT_LT((lambda_matrix(3).matrix() - l3).norm(), 1e-15);
  EXPECT_NEAR(std::abs(lambda_matrix(3).matrix().determinant() - 1.0), 0.0, 1e-14);
}

TEST(Lambda, RegularForManyN) {
  for (int n = 2; n <= 8; ++n) {
    const Matrix l = lambda_matrix(n).matrix();
    EXPECT_LT((l.adjoint() * l - Matrix::Identity(n, n)).norm(), 1e-14);
    EXPECT_NEAR(std::abs(l.determinant() - 1.0), 0.0, 1e-13);
    const auto ev = unitary_eigenvalues(lambda_matrix(n));
    double gap = 10.0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) gap = std::min(gap, std::abs(ev(a) - ev(b)));
    EXPECT_NEAR(gap, 2.0 * std::sin(std::numbers::pi / n), 1e-12);
  }
}

TEST(Frame, SU2) {
  const ToleranceConfig tol;
  const auto frame = build_frame(2, tol);
  ASSERT_EQ(frame.tprime_basis.size(), 1u);
  ASSERT_EQ(frame.t_basis.size(), 1u);
  Matrix want(2, 2);
  want << 0, I, I, 0;
  const Matrix got = frame.tprime_basis[0].matrix();
  // same line, any sign or scale
  const cplx ratio = got(0, 1) / want(0, 1);
  EXPECT_LT((got - ratio * want).norm(), 1e-12);
  EXPECT_NEAR(ratio.imag(), 0.0, 1e-12);
}

TEST(Frame, AuditsPass) {
  const ToleranceConfig tol;
  for (int n = 2; n <= 6; ++n) {
    const auto frame = build_frame(n, tol);
    const auto audit = audit_frame(frame, tol);
    EXPECT_TRUE(audit.passes(n, tol)) << n;
    EXPECT_EQ(audit.stacked_rank, 2 * (n - 1));
    EXPECT_LT(audit.max_cross_inner, 1e-12);
    EXPECT_TRUE(audit.lambda_regular);
    // t' really commutes with lambda
    for (const auto& v : frame.tprime_basis) {
      const Matrix l = frame.lambda.matrix();
      EXPECT_LT((l * v.matrix() - v.matrix() * l).norm(), 1e-12);
    }
  }
}

TEST(MomentEquation, ZeroRightHandSide) {
  const ToleranceConfig tol;
  const auto sol = solve_moment_equation(torus({0.3, 1.1, -1.4}), AlgebraElement::zero(3), tol);
  EXPECT_LT(sol.J.norm(), 1e-14);
}

TEST(MomentEquation, Su2SliceValueGivesTorusTwist) {
  const ToleranceConfig tol;
  for (double q : {0.3, 1.0, 2.5}) {
    const double x = 1.7;
    Matrix zeta = Matrix::Zero(2, 2);
    zeta(0, 1) = zeta(1, 0) = I * x;
    const auto sol = solve_moment_equation(torus({q, -q}), AlgebraElement::from_matrix(zeta), tol);
    const cplx e = std::exp(2.0 * I * q);
    Matrix want = Matrix::Zero(2, 2);
    want(0, 1) = I * x * e / (e - 1.0);
    want(1, 0) = -std::conj(want(0, 1));
    EXPECT_LT((sol.J.matrix() - want).norm(), 1e-12) << q;
    EXPECT_LT(sol.residual, 1e-12);
  }
}

TEST(MomentEquation, RandomTprimeIsSolvableAndIsotropyFree) {
  const ToleranceConfig tol;
  Rng rng(4);
  for (int n = 2; n <= 5; ++n) {
    const GroupContext ctx(n);
    const auto frame = build_frame(n, tol);
    for (int s = 0; s < 10; ++s) {
      const auto g = random_torus_element(ctx, rng);
      const auto zeta = random_tprime(frame, rng);
      const auto sol = solve_moment_equation(g, zeta, tol);
      EXPECT_LT(sol.residual, 1e-10);
      EXPECT_NEAR(moment_equation_residual(g, sol.J, zeta), sol.residual, 1e-14);
      EXPECT_EQ(psi_isotropy_dim(PhasePoint{g, sol.J}, tol), 0);
      EXPECT_LT((moment_map(PhasePoint{g, sol.J}).matrix() - zeta.matrix()).norm(), 1e-10);
      // minimal norm: no component along the diagonal kernel
      EXPECT_LT(sol.J.matrix().diagonal().norm(), 1e-12);
    }
  }
}

TEST(MomentEquation, TorusShiftLeavesSolvabilityAlone) {
  const ToleranceConfig tol;
  Rng rng(5);
  const GroupContext ctx(4);
  const auto frame = build_frame(4, tol);
  const auto g = random_torus_element(ctx, rng);
  const auto zeta = random_tprime(frame, rng);
  const auto sol = solve_moment_equation(g, zeta, tol);
  for (const auto& t : frame.t_basis) {
    const AlgebraElement shifted = AlgebraElement::from_matrix(sol.J.matrix() + 0.8 * t.matrix());
    EXPECT_LT(moment_equation_residual(g, shifted, zeta), 1e-12);
  }
}

TEST(MomentEquation, Errors) {
  const ToleranceConfig tol;
  Matrix zeta = Matrix::Zero(3, 3);
  zeta(0, 1) = I;
  zeta(1, 0) = I;
  const auto z = AlgebraElement::from_matrix(zeta);

  Rng rng(6);
  EXPECT_THROW(solve_moment_equation(random_group(GroupContext(3), rng), z, tol), PreconditionError);
  EXPECT_THROW(solve_moment_equation(torus({0.5, 0.5, -1.0}), z, tol), PreconditionError);
  EXPECT_THROW(solve_moment_equation(torus({0.5, -0.5}), z, tol), DimensionError);

  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = I;
  d(1, 1) = -I;
  EXPECT_THROW(solve_moment_equation(torus({0.3, 1.1, -1.4}), AlgebraElement::from_matrix(d), tol),
               SolvabilityError);
}

TEST(MomentEquation, DiagonalRightHandSideIsNeverInTheImage) {
  // J - g^{-1} J g has zero diagonal for diagonal g, so any zeta with a
  // diagonal part is unreachable; t' meets the diagonal torus only in 0
  const ToleranceConfig tol;
  for (int n = 2; n <= 5; ++n) {
    const auto frame = build_frame(n, tol);
    for (const auto& v : frame.tprime_basis) EXPECT_LT(v.matrix().diagonal().norm(), 1e-12);
  }
}

TEST(RandomTorus, IsSpecialAndDiagonal) {
  Rng rng(7);
  for (int n = 2; n <= 5; ++n) {
    const auto g = random_torus_element(GroupContext(n), rng).matrix();
    EXPECT_LT((g - Matrix(g.diagonal().asDiagonal())).norm(), 1e-15);
    EXPECT_NEAR(std::abs(g.determinant() - 1.0), 0.0, 1e-13);
  }
}
