#pragma once

// The maximal torus in apposition to the diagonal torus of SU(n), realized as
// the centralizer of the scaled cyclic shift Lambda_n, and the moment equation
// J - g^{-1} J g = zeta for g in the regular diagonal torus.

#include <vector>

#include "redint/lie_core.hpp"

namespace redint {

/// C (E_{n,1} + sum_k E_{k,k+1}) with C = exp(i pi (n-1) / n).
GroupElement lambda_matrix(int n);

struct AppositionFrame {
  int n = 0;
  GroupElement lambda;
  std::vector<AlgebraElement> t_basis;       // diagonal torus algebra
  std::vector<AlgebraElement> tprime_basis;  // centralizer algebra of lambda
};

/// Throws Error when the centralizer of lambda does not have dimension n - 1.
AppositionFrame build_frame(int n, const ToleranceConfig& tol);

struct FrameAudit {
  double lambda_unitarity = 0.0;
  double lambda_det_defect = 0.0;
  double lambda_min_eigen_gap = 0.0;
  bool lambda_regular = false;
  double max_cross_inner = 0.0;   // max |<u, v>|, u in t, v in t'
  double gram_defect = 0.0;       // deviation of both bases from orthonormal
  int stacked_rank = 0;           // expected 2 (n - 1)

  bool passes(int n, const ToleranceConfig& tol) const;
};

FrameAudit audit_frame(const AppositionFrame& frame, const ToleranceConfig& tol);

/// Eigenvalues of a unitary matrix.
Eigen::VectorXcd unitary_eigenvalues(const GroupElement& g);

struct MomentSolution {
  AlgebraElement J;
  double residual = 0.0;
};

/// Minimal-norm J with J - g^{-1} J g = zeta. Requires g diagonal with
/// distinct eigenvalues; throws SolvabilityError when the residual exceeds
/// 1e-10 (zeta outside the image).
MomentSolution solve_moment_equation(const GroupElement& g, const AlgebraElement& zeta,
                                     const ToleranceConfig& tol);

double moment_equation_residual(const GroupElement& g, const AlgebraElement& j,
                                const AlgebraElement& zeta);

/// diag(e^{i theta_1}, ..., e^{i theta_n}) with uniform phases summing to 0.
GroupElement random_torus_element(const GroupContext& ctx, Rng& rng);

/// Standard-normal combination of the frame's t' basis.
AlgebraElement random_tprime(const AppositionFrame& frame, Rng& rng);

}  // namespace redint
