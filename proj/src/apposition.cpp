#include "redint/apposition.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace redint {

namespace {

constexpr double kMomentResidualBound = 1e-10;

}  // namespace

GroupElement lambda_matrix(int n) {
  if (n < 2) throw PreconditionError("lambda_matrix: n must be >= 2");
  const cplx c = std::exp(cplx(0.0, std::numbers::pi * (n - 1) / n));
  Matrix m = Matrix::Zero(n, n);
  m(n - 1, 0) = c;
  for (int k = 0; k + 1 < n; ++k) m(k, k + 1) = c;
  return GroupElement::unchecked(std::move(m));
}

AppositionFrame build_frame(int n, const ToleranceConfig& tol) {
  const GroupContext ctx(n);
  AppositionFrame frame;
  frame.n = n;
  frame.lambda = lambda_matrix(n);

  const auto basis = orthonormal_basis(ctx);
  // The first n - 1 basis elements are the diagonal ones.
  frame.t_basis.assign(basis.begin(), basis.begin() + ctx.rank());

  RealMatrix op(ctx.dim_g(), ctx.dim_g());
  for (int b = 0; b < ctx.dim_g(); ++b) {
    op.col(b) = coords(adjoint(frame.lambda, basis[b]) - basis[b]);
  }
  const RealMatrix kernel = null_space(op, tol.rank);
  if (kernel.cols() != ctx.rank()) {
    throw Error("build_frame: centralizer of Lambda_" + std::to_string(n) + " has dimension " +
                std::to_string(kernel.cols()) + ", expected " + std::to_string(ctx.rank()));
  }
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    frame.tprime_basis.push_back(from_coords(n, kernel.col(c)));
  }
  return frame;
}

Eigen::VectorXcd unitary_eigenvalues(const GroupElement& g) {
  Eigen::ComplexEigenSolver<Matrix> es(g.matrix(), false);
  return es.eigenvalues();
}

bool FrameAudit::passes(int n, const ToleranceConfig& tol) const {
  return lambda_unitarity <= tol.structural && lambda_det_defect <= tol.structural &&
         lambda_regular && max_cross_inner <= 1e-12 && gram_defect <= 1e-12 &&
         stacked_rank == 2 * (n - 1);
}

FrameAudit audit_frame(const AppositionFrame& frame, const ToleranceConfig& tol) {
  FrameAudit audit;
  const Matrix& lam = frame.lambda.matrix();
  audit.lambda_unitarity = unitarity_residual(lam);
  audit.lambda_det_defect = std::abs(lam.determinant() - cplx(1.0, 0.0));

  const Eigen::VectorXcd ev = unitary_eigenvalues(frame.lambda);
  audit.lambda_min_eigen_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index a = 0; a < ev.size(); ++a) {
    for (Eigen::Index b = a + 1; b < ev.size(); ++b) {
      audit.lambda_min_eigen_gap = std::min(audit.lambda_min_eigen_gap, std::abs(ev(a) - ev(b)));
    }
  }
  audit.lambda_regular = audit.lambda_min_eigen_gap > tol.eigen_gap;

  const auto gram_defect = [](const std::vector<AlgebraElement>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        worst = std::max(worst, std::abs(inner(b[i], b[j]) - (i == j ? 1.0 : 0.0)));
      }
    }
    return worst;
  };
  audit.gram_defect = std::max(gram_defect(frame.t_basis), gram_defect(frame.tprime_basis));

  for (const auto& u : frame.t_basis) {
    for (const auto& v : frame.tprime_basis) {
      audit.max_cross_inner = std::max(audit.max_cross_inner, std::abs(inner(u, v)));
    }
  }

  const int d = frame.n * frame.n - 1;
  RealMatrix stacked(static_cast<Eigen::Index>(frame.t_basis.size() + frame.tprime_basis.size()), d);
  Eigen::Index row = 0;
  for (const auto& u : frame.t_basis) stacked.row(row++) = coords(u);
  for (const auto& v : frame.tprime_basis) stacked.row(row++) = coords(v);
  audit.stacked_rank = numerical_rank(stacked, tol.rank).rank;
  return audit;
}

double moment_equation_residual(const GroupElement& g, const AlgebraElement& j,
                                const AlgebraElement& zeta) {
  return (j.matrix() - g.matrix().adjoint() * j.matrix() * g.matrix() - zeta.matrix()).norm();
}

MomentSolution solve_moment_equation(const GroupElement& g, const AlgebraElement& zeta,
                                     const ToleranceConfig& tol) {
  if (g.size() != zeta.size()) throw DimensionError("solve_moment_equation: size mismatch");
  if (!is_regular_torus_element(g, tol)) {
    throw PreconditionError("solve_moment_equation: g must be a regular diagonal torus element");
  }
  const GroupContext ctx(g.size());
  const auto basis = orthonormal_basis(ctx);
  const GroupElement ginv = g.inverse();
  RealMatrix op(ctx.dim_g(), ctx.dim_g());
  for (int b = 0; b < ctx.dim_g(); ++b) op.col(b) = coords(basis[b] - adjoint(ginv, basis[b]));

  Eigen::JacobiSVD<RealMatrix> svd(op, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double cutoff = tol.rank * (sv.size() > 0 ? sv(0) : 0.0);
  RealVector inv = RealVector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff && sv(i) > 0.0) inv(i) = 1.0 / sv(i);
  }
  const RealVector sol =
      svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose() * coords(zeta);

  MomentSolution out{from_coords(ctx.n(), sol), 0.0};
  out.residual = moment_equation_residual(g, out.J, zeta);
  if (!(out.residual <= kMomentResidualBound)) {
    throw SolvabilityError("moment equation has no solution (residual " +
                           std::to_string(out.residual) + ")");
  }
  return out;
}

GroupElement random_torus_element(const GroupContext& ctx, Rng& rng) {
  const int n = ctx.n();
  std::vector<double> theta(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    theta[i] = 2.0 * std::numbers::pi * rng.uniform();
    sum += theta[i];
  }
  theta[n - 1] = -sum;
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = std::exp(cplx(0.0, theta[i]));
  return GroupElement::unchecked(std::move(m));
}

AlgebraElement random_tprime(const AppositionFrame& frame, Rng& rng) {
  AlgebraElement out = AlgebraElement::zero(frame.n);
  for (const auto& v : frame.tprime_basis) out = out + v * rng.normal();
  return out;
}

}  // namespace redint
