#include "redint/rank.hpp"

#include <stdexcept>

namespace redint {

namespace {

RealVector singular_values_of(const RealMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return RealVector{};
  Eigen::JacobiSVD<RealMatrix> svd(m);
  return svd.singularValues();
}

RankResult rank_from_spectrum(RealVector sv, double tau_rank) {
  RankResult out;
  out.singular_values = std::move(sv);
  if (out.singular_values.size() == 0) return out;
  const double smax = out.singular_values(0);
  out.cutoff = tau_rank * smax;
  if (smax == 0.0) return out;
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) {
    if (out.singular_values(i) > out.cutoff) ++out.rank;
  }
  return out;
}

}  // namespace

RankResult numerical_rank(const RealMatrix& m, double tau_rank) {
  return rank_from_spectrum(singular_values_of(m), tau_rank);
}

RankResult equilibrated_rank(const RealMatrix& m, double tau_rank) {
  if (m.rows() == 0) return RankResult{};
  const RealVector norms = m.rowwise().norm();
  const double largest = norms.maxCoeff();
  if (largest == 0.0) {
    return rank_from_spectrum(RealVector::Zero(std::min(m.rows(), m.cols())), tau_rank);
  }
  RealMatrix scaled(m.rows(), m.cols());
  Eigen::Index kept = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (norms(i) > tau_rank * largest) scaled.row(kept++) = m.row(i) / norms(i);
  }
  scaled.conservativeResize(kept, Eigen::NoChange);
  return rank_from_spectrum(singular_values_of(scaled), tau_rank);
}

RealMatrix null_space(const RealMatrix& m, double tau_rank) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return RealMatrix::Identity(cols, cols);
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  if (smax > 0.0) {
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > tau_rank * smax) ++rank;
    }
  }
  return svd.matrixV().rightCols(cols - rank);
}

RealMatrix vstack(const RealMatrix& top, const RealMatrix& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) throw std::invalid_argument("vstack: column mismatch");
  RealMatrix out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

}  // namespace redint
