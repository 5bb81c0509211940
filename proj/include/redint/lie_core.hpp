#pragma once

// Matrix Lie theory for SU(n) and su(n): the invariant inner product,
// brackets, exponential, adjoint actions, centralizers and seeded sampling.

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "redint/errors.hpp"
#include "redint/rank.hpp"

namespace redint {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

struct ToleranceConfig {
  double structural = 1e-10;   // residual bound for group/algebra membership
  double rank = 1e-8;          // relative singular-value cutoff
  double fd_step = 1e-5;       // central finite-difference step
  double fd = 1e-6;            // finite-difference vs analytic bound
  double conservation = 1e-10;
  double eigen_gap = 1e-8;     // eigenvalue separation required for regularity

  /// Throws PreconditionError unless every field is positive and structural < fd.
  void validate() const;
};

/// SU(n) together with its derived dimensions.
class GroupContext {
 public:
  explicit GroupContext(int n);

  int n() const { return n_; }
  int dim_g() const { return n_ * n_ - 1; }
  int rank() const { return n_ - 1; }
  int dim_M() const { return 2 * dim_g(); }

 private:
  int n_;
};

/// Element of su(n): anti-Hermitian and traceless.
class AlgebraElement {
 public:
  AlgebraElement() = default;

  /// Validates both invariants to tol (relative to max(1, |m|)).
  static AlgebraElement from_matrix(Matrix m, double tol = ToleranceConfig{}.structural);
  static AlgebraElement unchecked(Matrix m) { return AlgebraElement(std::move(m)); }
  static AlgebraElement zero(int n) { return AlgebraElement(Matrix::Zero(n, n)); }

  const Matrix& matrix() const { return mat_; }
  int size() const { return static_cast<int>(mat_.rows()); }
  double norm() const { return mat_.norm(); }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const { return AlgebraElement(-mat_); }
  AlgebraElement operator*(double s) const { return AlgebraElement(mat_ * s); }
  friend AlgebraElement operator*(double s, const AlgebraElement& x) { return x * s; }

 private:
  explicit AlgebraElement(Matrix m) : mat_(std::move(m)) {}
  Matrix mat_;
};

/// Element of SU(n): unitary with unit determinant.
class GroupElement {
 public:
  GroupElement() = default;

  static GroupElement from_matrix(Matrix m, double tol = ToleranceConfig{}.structural);
  static GroupElement unchecked(Matrix m) { return GroupElement(std::move(m)); }
  static GroupElement identity(int n) { return GroupElement(Matrix::Identity(n, n)); }

  const Matrix& matrix() const { return mat_; }
  int size() const { return static_cast<int>(mat_.rows()); }
  GroupElement inverse() const { return GroupElement(mat_.adjoint()); }
  GroupElement operator*(const GroupElement& o) const;

 private:
  explicit GroupElement(Matrix m) : mat_(std::move(m)) {}
  Matrix mat_;
};

double anti_hermitian_residual(const Matrix& m);
double unitarity_residual(const Matrix& m);

/// <X,Y> = -Re tr(XY).
double inner(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement lie_bracket(const AlgebraElement& x, const AlgebraElement& y);

/// Exponential via the spectral decomposition of the Hermitian matrix iX,
/// followed by polar re-projection onto U(n).
GroupElement group_exp(const AlgebraElement& x);

/// eta X eta^{-1}.
AlgebraElement adjoint(const GroupElement& eta, const AlgebraElement& x);

/// Orthogonal projection of an arbitrary complex matrix onto su(n) with
/// respect to the real Frobenius product; for X in su(n),
/// <X, project_su(M)> = Re tr(X^dagger M) = -Re tr(X M).
AlgebraElement project_su(const Matrix& m);

/// The unique G in su(n) with <X, G> = Re tr(X K) for all X in su(n).
AlgebraElement riesz_gradient(const Matrix& k);

/// Orthonormal basis of su(n): n-1 diagonal generalized Gell-Mann elements
/// first, then for every j < k the pair (E_jk - E_kj)/sqrt2, i(E_jk + E_kj)/sqrt2.
std::vector<AlgebraElement> orthonormal_basis(const GroupContext& ctx);

/// Coordinates of project_su(m) in orthonormal_basis; length n^2 - 1.
RealVector coords(const Matrix& m);
inline RealVector coords(const AlgebraElement& x) { return coords(x.matrix()); }
AlgebraElement from_coords(int n, const RealVector& c);

/// Real matrix of ad_J in the orthonormal basis (column b = coords([J, e_b])).
RealMatrix ad_matrix(const AlgebraElement& j);

RankResult centralizer_spectrum(const AlgebraElement& j, const ToleranceConfig& tol);
int centralizer_dim_algebra(const AlgebraElement& j, const ToleranceConfig& tol);

using IsotropyItem = std::variant<GroupElement, AlgebraElement>;

/// dim {Y in su(n) : [Y, item] = 0 for every item}.
int joint_centralizer_dim(std::span<const IsotropyItem> items, const ToleranceConfig& tol);
RankResult joint_centralizer_spectrum(std::span<const IsotropyItem> items,
                                      const ToleranceConfig& tol);

/// Ascending eigenvalues of the Hermitian matrix iJ.
RealVector hermitian_spectrum(const AlgebraElement& j);
bool is_regular(const AlgebraElement& j, const ToleranceConfig& tol);

/// True when g is diagonal (to tol.structural) with pairwise distinct
/// eigenvalues (separated by more than tol.eigen_gap).
bool is_regular_torus_element(const GroupElement& g, const ToleranceConfig& tol);

// ---------------------------------------------------------------------------
// Sampling

/// SplitMix64 finalizer, used to derive independent per-sample seeds.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Platform-independent normal deviates: mt19937_64 feeding a Box-Muller
/// transform, so draws are bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // in (0, 1)
  double normal();
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

AlgebraElement random_algebra(const GroupContext& ctx, Rng& rng);
AlgebraElement random_algebra(const GroupContext& ctx, std::uint64_t seed);
GroupElement random_group(const GroupContext& ctx, Rng& rng);
GroupElement random_group(const GroupContext& ctx, std::uint64_t seed);

}  // namespace redint
