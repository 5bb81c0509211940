#pragma once

#include <Eigen/Dense>

namespace redint {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Outcome of a rank-revealing SVD: the integer rank together with the full
/// singular spectrum and the absolute cutoff that separated it.
struct RankResult {
  int rank = 0;
  RealVector singular_values;
  double cutoff = 0.0;
};

/// Counts singular values strictly above tau_rank * sigma_max. A zero matrix
/// (or one with no rows) has rank 0.
RankResult numerical_rank(const RealMatrix& m, double tau_rank);

/// Same as numerical_rank after scaling every row to unit length. Rows whose
/// norm does not exceed tau_rank times the largest row norm are treated as
/// zero and dropped, so roundoff-level rows cannot inflate the rank.
RankResult equilibrated_rank(const RealMatrix& m, double tau_rank);

/// Orthonormal basis (as columns) of the numerical kernel of m.
RealMatrix null_space(const RealMatrix& m, double tau_rank);

/// Stacks two matrices with equal column count vertically.
RealMatrix vstack(const RealMatrix& top, const RealMatrix& bottom);

}  // namespace redint
