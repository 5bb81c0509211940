#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "redint/master_system.hpp"

using namespace redint;

namespace {

const cplx I{0.0, 1.0};

// C_k(J) = Re(i^k tr J^k), straight from the definition
double casimir_plain(int k, const Matrix& j) {
  Matrix p = Matrix::Identity(j.rows(), j.cols());
  for (int i = 0; i < k; ++i) p = p * j;
  return (std::pow(I, k) * p.trace()).real();
}

double dist(const PhasePoint& a, const PhasePoint& b) {
  return (a.g.matrix() - b.g.matrix()).norm() + (a.J - b.J).norm();
}

}  // namespace

TEST(Casimir, ValueAndReality) {
  Rng rng(1);
  for (int n = 2; n <= 4; ++n) {
    const GroupContext ctx(n);
    for (int k = 2; k <= n; ++k) {
      const InvariantHamiltonian h(k);
      const auto j = random_algebra(ctx, rng);
      EXPECT_NEAR(h.value(j), casimir_plain(k, j.matrix()), 1e-12);
      const PhasePoint x{random_group(ctx, rng), j};
      EXPECT_NEAR(eval(h.observable(), x), h.value(j), 1e-12);
      // i^k tr J^k is real for anti-Hermitian J
      Matrix p = Matrix::Identity(n, n);
      for (int i = 0; i < k; ++i) p = p * j.matrix();
      EXPECT_NEAR((std::pow(I, k) * p.trace()).imag(), 0.0, 1e-12);
      EXPECT_NEAR(h.value(adjoint(random_group(ctx, rng), j)), h.value(j), 1e-11);
    }
  }
  EXPECT_THROW(InvariantHamiltonian(1), PreconditionError);
  // C_2 is the norm square
  const auto j = random_algebra(GroupContext(3), rng);
  EXPECT_NEAR(InvariantHamiltonian(2).value(j), inner(j, j), 1e-13);
}

TEST(DPhi, Examples) {
  Rng rng(2);
  for (int n = 2; n <= 4; ++n) {
    const GroupContext ctx(n);
    const auto j = random_algebra(ctx, rng);
    EXPECT_LT((d_phi(InvariantHamiltonian(2), j) - j * 2.0).norm(), 1e-13);
    for (int k = 3; k <= n; ++k) EXPECT_EQ(d_phi(InvariantHamiltonian(k), AlgebraElement::zero(n)).norm(), 0.0);
    for (int k = 2; k <= n; ++k) {
      const InvariantHamiltonian h(k);
      const auto eta = random_group(ctx, rng);
      EXPECT_LT((d_phi(h, adjoint(eta, j)) - adjoint(eta, d_phi(h, j))).norm(), 1e-10);
      // finite-difference gradient of the plain formula
      const auto basis = oracle::gell_mann(n);
      RealVector fd(static_cast<Eigen::Index>(basis.size()));
      for (std::size_t a = 0; a < basis.size(); ++a) {
        fd(static_cast<Eigen::Index>(a)) =
            oracle::central([&](double t) { return casimir_plain(k, j.matrix() + t * basis[a]); }, 1e-5);
      }
      EXPECT_LT((oracle::basis_coords(d_phi(h, j).matrix()) - fd).norm(), 1e-7 * std::max(1.0, fd.norm()));
      // d_phi commutes with J
      EXPECT_LT(lie_bracket(d_phi(h, j), j).norm(), 1e-11 * std::max(1.0, fd.norm()));
    }
  }
}

TEST(Flow, Examples) {
  Rng rng(3);
  const GroupContext ctx(3);
  const auto x0 = random_phase_point(ctx, rng);
  EXPECT_LT(dist(flow(x0, InvariantHamiltonian(3), 0.0), x0), 1e-14);
  for (int k = 2; k <= 3; ++k) {
    const InvariantHamiltonian h(k);
    const auto lhs = flow(flow(x0, h, 0.7), h, 1.9);
    EXPECT_LT(dist(lhs, flow(x0, h, 2.6)), 1e-10);
    EXPECT_EQ(flow(x0, h, 4.0).J.matrix(), x0.J.matrix());
  }
  Matrix j = Matrix::Zero(2, 2);
  j(0, 0) = I;
  j(1, 1) = -I;
  const PhasePoint p{GroupElement::identity(2), AlgebraElement::from_matrix(j)};
  for (double t : {0.3, 1.0, 5.0}) {
    Matrix want = Matrix::Zero(2, 2);
    want(0, 0) = std::exp(2.0 * I * t);
    want(1, 1) = std::exp(-2.0 * I * t);
    EXPECT_LT((flow(p, InvariantHamiltonian(2), t).g.matrix() - want).norm(), 1e-13);
  }
}

TEST(Flow, IsTheHamiltonianFlow) {
  // the velocity of the flow at t = 0 is the Hamiltonian vector of C_k
  Rng rng(4);
  const GroupContext ctx(3);
  for (int k = 2; k <= 3; ++k) {
    const InvariantHamiltonian h(k);
    const auto x = random_phase_point(ctx, rng);
    const auto v = hamiltonian_vector(h.observable(), x);
    const Matrix dg = (flow(x, h, 1e-6).g.matrix() - flow(x, h, -1e-6).g.matrix()) / 2e-6;
    EXPECT_LT((dg - v.a.matrix() * x.g.matrix()).norm(), 1e-7 * std::max(1.0, v.a.norm()));
    EXPECT_LT(v.b.norm(), 1e-12 * std::max(1.0, v.a.norm()));
  }
}

TEST(Psi, Examples) {
  Rng rng(5);
  const GroupContext ctx(3);
  const auto j = random_algebra(ctx, rng);
  const auto z = psi(PhasePoint{GroupElement::identity(3), j});
  EXPECT_LT((z.X - j).norm() + (z.Y - j).norm(), 1e-15);
  const auto zero = psi(PhasePoint{random_group(ctx, rng), AlgebraElement::zero(3)});
  EXPECT_EQ(zero.X.norm() + zero.Y.norm(), 0.0);
}

TEST(Psi, FlowInvarianceAndEquivariance) {
  Rng rng(6);
  const auto grid = default_t_grid();
  ASSERT_EQ(grid.size(), 21u);
  EXPECT_EQ(grid.front(), 0.0);
  EXPECT_EQ(grid.back(), 10.0);
  for (int n = 2; n <= 3; ++n) {
    const GroupContext ctx(n);
    for (int s = 0; s < 10; ++s) {
      const auto x = random_phase_point(ctx, rng);
      for (int k = 2; k <= n; ++k) {
        EXPECT_LE(verify_psi_flow_invariance(x, InvariantHamiltonian(k), grid), 1e-10);
      }
      const std::vector<double> only_zero{0.0};
      EXPECT_EQ(verify_psi_flow_invariance(x, InvariantHamiltonian(2), only_zero), 0.0);
      EXPECT_LE(verify_psi_equivariance(x, random_group(ctx, rng)), 1e-12);
    }
  }
}

TEST(DoubleBracket, Examples) {
  Rng rng(7);
  for (int n = 2; n <= 3; ++n) {
    const GroupContext ctx(n);
    const DoublePoint z{random_algebra(ctx, rng), random_algebra(ctx, rng)};
    const auto a = random_algebra(ctx, rng), b = random_algebra(ctx, rng);
    const auto fa = DoubleFunction::linear(a, Letter::X);
    const auto fb = DoubleFunction::linear(b, Letter::X);
    EXPECT_NEAR(lp_double_bracket(fa, fb, z), -inner(z.X, lie_bracket(a, b)), 1e-13);
    const auto fy = DoubleFunction::trace({Letter::Y, Letter::Y, Letter::Y}, Part::Im);
    EXPECT_EQ(lp_double_bracket(DoubleFunction::trace({Letter::X, Letter::X}), fy, z), 0.0);
    const auto casimir = DoubleFunction::trace({Letter::X, Letter::X});
    for (int s = 0; s < 10; ++s) {
      const auto h = DoubleFunction::trace({Letter::X, Letter::Y, Letter::X, Letter::Y}, Part::Re,
                                           rng.normal());
      EXPECT_LT(std::abs(lp_double_bracket(casimir, h, z)), 1e-10);
    }
  }
}

TEST(DoubleFunction, GradientsMatchDifferences) {
  Rng rng(8);
  const GroupContext ctx(3);
  const auto basis = oracle::gell_mann(3);
  const auto f = DoubleFunction::parse("Re tr(X*Y*Y) - 0.5 * Im tr(X*X*Y*X)");
  EXPECT_THROW(DoubleFunction::parse("Re tr(G*X)"), PreconditionError);
  for (int s = 0; s < 10; ++s) {
    const DoublePoint z{random_algebra(ctx, rng), random_algebra(ctx, rng)};
    RealVector fx(8), fy(8);
    for (int a = 0; a < 8; ++a) {
      const auto ea = AlgebraElement::from_matrix(basis[a]);
      fx(a) = oracle::central([&](double t) { return eval(f, DoublePoint{z.X + ea * t, z.Y}); }, 1e-5);
      fy(a) = oracle::central([&](double t) { return eval(f, DoublePoint{z.X, z.Y + ea * t}); }, 1e-5);
    }
    EXPECT_LT((coords(grad_x(f, z)) - fx).norm(), 1e-7 * std::max(1.0, fx.norm()));
    EXPECT_LT((coords(grad_y(f, z)) - fy).norm(), 1e-7 * std::max(1.0, fy.norm()));
  }
}

TEST(PsiPoisson, Examples) {
  Rng rng(9);
  const auto f = DoubleFunction::trace({Letter::X, Letter::Y});
  const auto h = DoubleFunction::trace({Letter::Y, Letter::Y});
  for (int n = 2; n <= 3; ++n) {
    const GroupContext ctx(n);
    for (int s = 0; s < 50; ++s) {
      const auto x = random_phase_point(ctx, rng);
      EXPECT_LT(verify_psi_poisson(f, f, x), 1e-12);
      EXPECT_LT(verify_psi_poisson(f, h, x), 1e-8);
      const auto p = DoubleFunction::trace({Letter::X, Letter::X, Letter::Y}, Part::Im, rng.normal());
      const auto q = DoubleFunction::trace({Letter::X, Letter::Y, Letter::Y, Letter::X, Letter::Y},
                                           Part::Re, rng.normal());
      EXPECT_LT(verify_psi_poisson(p, q, x), 1e-8);
    }
  }
}

TEST(Pullback, HamiltoniansAreConstantsWordForWord) {
  for (int k = 2; k <= 5; ++k) {
    EXPECT_EQ(pullback(DoubleFunction::casimir(k, Letter::Y)).to_string(),
              InvariantHamiltonian(k).observable().to_string());
  }
  Rng rng(10);
  const auto x = random_phase_point(GroupContext(3), rng);
  const auto f = DoubleFunction::trace({Letter::X, Letter::Y, Letter::X});
  EXPECT_NEAR(eval(pullback(f), x), eval(f, psi(x)), 1e-12);
}

TEST(DPsi, RankExamples) {
  const ToleranceConfig tol;
  Rng rng(11);
  for (int n = 2; n <= 3; ++n) {
    const GroupContext ctx(n);
    for (int s = 0; s < 20; ++s) {
      const auto x = random_phase_point(ctx, rng);
      ASSERT_TRUE(is_regular(x.J, tol));
      EXPECT_EQ(dpsi_rank(x, tol), ctx.dim_M() - ctx.rank());
    }
    const PhasePoint zero{random_group(ctx, rng), AlgebraElement::zero(n)};
    EXPECT_EQ(dpsi_rank(zero, tol), ctx.dim_g());
  }
  EXPECT_EQ(dpsi_rank(random_phase_point(GroupContext(2), 1), tol), 5);
  EXPECT_EQ(dpsi_rank(random_phase_point(GroupContext(3), 1), tol), 14);
}

TEST(DPsi, AnalyticJacobianMatchesDifferences) {
  const ToleranceConfig tol;
  Rng rng(12);
  for (int n = 2; n <= 3; ++n) {
    for (int s = 0; s < 10; ++s) {
      const auto x = random_phase_point(GroupContext(n), rng);
      const RealMatrix a = dpsi_jacobian(x);
      EXPECT_LT((a - dpsi_jacobian_fd(x, tol)).norm(), tol.fd * std::max(1.0, a.norm()));
      // rank agrees with an independent QR rank of the FD Jacobian
      EXPECT_EQ(dpsi_rank(x, tol), oracle::qr_rank(dpsi_jacobian_fd(x, tol), 1e-6));
    }
  }
}

TEST(CasimirDifference, Examples) {
  Rng rng(13);
  for (int n = 2; n <= 3; ++n) {
    const GroupContext ctx(n);
    for (int k = 2; k <= n; ++k) {
      for (int s = 0; s < 10; ++s) {
        EXPECT_LT(casimir_difference_check(psi(random_phase_point(ctx, rng)), k), 1e-10);
      }
      const auto x = random_algebra(ctx, rng);
      EXPECT_EQ(casimir_difference_check(DoublePoint{x, x}, k), 0.0);
    }
    int nonzero = 0;
    for (int s = 0; s < 10; ++s) {
      const DoublePoint z{random_algebra(ctx, rng), random_algebra(ctx, rng)};
      nonzero += casimir_difference_check(z, 2) > 1e-6;
    }
    EXPECT_EQ(nonzero, 10);
  }
}

TEST(Differentials, HamiltonianAndConstantRanks) {
  const ToleranceConfig tol;
  Rng rng(14);
  for (int n = 2; n <= 3; ++n) {
    const GroupContext ctx(n);
    for (int s = 0; s < 10; ++s) {
      const auto x = random_phase_point(ctx, rng);
      EXPECT_EQ(hamiltonian_differentials_rank(x, tol).rank, ctx.rank());
      EXPECT_EQ(constants_differentials_rank(x, tol).rank, ctx.dim_M() - ctx.rank());
    }
  }
}

TEST(DoublePoint, Validation) {
  EXPECT_THROW(DoublePoint::make(AlgebraElement::zero(2), AlgebraElement::zero(3)), DimensionError);
  const DoublePoint a{AlgebraElement::zero(2), AlgebraElement::zero(2)};
  EXPECT_EQ(distance(a, a), 0.0);
}
