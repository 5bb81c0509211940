#include "redint/lie_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace redint {

namespace {

void require_same_size(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": size mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

int item_size(const IsotropyItem& item) {
  return std::visit([](const auto& v) { return v.size(); }, item);
}

const Matrix& item_matrix(const IsotropyItem& item) {
  return std::visit([](const auto& v) -> const Matrix& { return v.matrix(); }, item);
}

}  // namespace

void ToleranceConfig::validate() const {
  for (double v : {structural, rank, fd_step, fd, conservation, eigen_gap}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw PreconditionError("tolerances must be finite and strictly positive");
    }
  }
  if (!(structural < fd)) throw PreconditionError("tolerances: structural must be below fd");
}

GroupContext::GroupContext(int n) : n_(n) {
  if (n < 2) throw PreconditionError("GroupContext: n must be >= 2, got " + std::to_string(n));
}

// ---------------------------------------------------------------------------

double anti_hermitian_residual(const Matrix& m) {
  return (m + m.adjoint()).norm();
}

double unitarity_residual(const Matrix& m) {
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm();
}

AlgebraElement AlgebraElement::from_matrix(Matrix m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 1) throw DimensionError("algebra element must be square");
  const double scale = std::max(1.0, m.norm());
  if (anti_hermitian_residual(m) > tol * scale) {
    throw StructureError("matrix is not anti-Hermitian");
  }
  if (std::abs(m.trace()) > tol * scale) throw StructureError("matrix is not traceless");
  return AlgebraElement(std::move(m));
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  require_same_size(size(), o.size(), "algebra +");
  return AlgebraElement(mat_ + o.mat_);
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  require_same_size(size(), o.size(), "algebra -");
  return AlgebraElement(mat_ - o.mat_);
}

GroupElement GroupElement::from_matrix(Matrix m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 1) throw DimensionError("group element must be square");
  if (unitarity_residual(m) > tol) throw StructureError("matrix is not unitary");
  if (std::abs(m.determinant() - cplx(1.0, 0.0)) > tol) {
    throw StructureError("matrix does not have unit determinant");
  }
  return GroupElement(std::move(m));
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  require_same_size(size(), o.size(), "group product");
  return GroupElement(mat_ * o.mat_);
}

// ---------------------------------------------------------------------------

double inner(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_size(x.size(), y.size(), "inner");
  // -Re tr(XY) without forming the product.
  return -(x.matrix().transpose().cwiseProduct(y.matrix())).sum().real();
}

AlgebraElement lie_bracket(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_size(x.size(), y.size(), "lie_bracket");
  const Matrix& a = x.matrix();
  const Matrix& b = y.matrix();
  return AlgebraElement::unchecked(a * b - b * a);
}

GroupElement group_exp(const AlgebraElement& x) {
  const Eigen::Index n = x.size();
  const Matrix h = cplx(0.0, 1.0) * x.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXcd phases =
      es.eigenvalues().unaryExpr([](double d) { return std::exp(cplx(0.0, -d)); });
  const Matrix& v = es.eigenvectors();
  Matrix u = v * phases.asDiagonal() * v.adjoint();

  // Polar projection onto U(n), then remove the residual determinant phase.
  Eigen::JacobiSVD<Matrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  u = svd.matrixU() * svd.matrixV().adjoint();
  const cplx det = u.determinant();
  u *= std::pow(det, -1.0 / static_cast<double>(n));
  return GroupElement::unchecked(std::move(u));
}

AlgebraElement adjoint(const GroupElement& eta, const AlgebraElement& x) {
  require_same_size(eta.size(), x.size(), "adjoint");
  return AlgebraElement::unchecked(eta.matrix() * x.matrix() * eta.matrix().adjoint());
}

AlgebraElement project_su(const Matrix& m) {
  const Eigen::Index n = m.rows();
  Matrix a = 0.5 * (m - m.adjoint());
  a -= (a.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
  return AlgebraElement::unchecked(std::move(a));
}

AlgebraElement riesz_gradient(const Matrix& k) {
  return -project_su(k);
}

// ---------------------------------------------------------------------------
// Orthonormal basis and coordinates

std::vector<AlgebraElement> orthonormal_basis(const GroupContext& ctx) {
  const int n = ctx.n();
  std::vector<AlgebraElement> basis;
  basis.reserve(static_cast<std::size_t>(ctx.dim_g()));
  RealVector c = RealVector::Zero(ctx.dim_g());
  for (int a = 0; a < ctx.dim_g(); ++a) {
    c.setZero();
    c(a) = 1.0;
    basis.push_back(from_coords(n, c));
  }
  return basis;
}

RealVector coords(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  RealVector c(n * n - 1);
  int a = 0;
  for (int k = 1; k < n; ++k) {
    // i * diag(1, ..., 1, -k, 0, ...) / sqrt(k (k+1)), with k leading ones.
    double acc = 0.0;
    for (int l = 0; l < k; ++l) acc += m(l, l).imag();
    acc -= k * m(k, k).imag();
    c(a++) = acc / std::sqrt(static_cast<double>(k * (k + 1)));
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      c(a++) = (m(j, k) - m(k, j)).real() / std::numbers::sqrt2;
      c(a++) = (m(j, k) + m(k, j)).imag() / std::numbers::sqrt2;
    }
  }
  return c;
}

AlgebraElement from_coords(int n, const RealVector& c) {
  if (c.size() != n * n - 1) throw DimensionError("from_coords: wrong coordinate count");
  Matrix m = Matrix::Zero(n, n);
  const cplx i(0.0, 1.0);
  int a = 0;
  for (int k = 1; k < n; ++k) {
    const double s = c(a++) / std::sqrt(static_cast<double>(k * (k + 1)));
    for (int l = 0; l < k; ++l) m(l, l) += i * s;
    m(k, k) -= i * (k * s);
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const double re = c(a++) / std::numbers::sqrt2;
      const double im = c(a++) / std::numbers::sqrt2;
      m(j, k) += re + i * im;
      m(k, j) += -re + i * im;
    }
  }
  return AlgebraElement::unchecked(std::move(m));
}

RealMatrix ad_matrix(const AlgebraElement& j) {
  const GroupContext ctx(j.size());
  const auto basis = orthonormal_basis(ctx);
  RealMatrix ad(ctx.dim_g(), ctx.dim_g());
  for (int b = 0; b < ctx.dim_g(); ++b) ad.col(b) = coords(lie_bracket(j, basis[b]));
  return ad;
}

RankResult centralizer_spectrum(const AlgebraElement& j, const ToleranceConfig& tol) {
  return numerical_rank(ad_matrix(j), tol.rank);
}

int centralizer_dim_algebra(const AlgebraElement& j, const ToleranceConfig& tol) {
  const int dim_g = j.size() * j.size() - 1;
  return dim_g - centralizer_spectrum(j, tol).rank;
}

RankResult joint_centralizer_spectrum(std::span<const IsotropyItem> items,
                                      const ToleranceConfig& tol) {
  if (items.empty()) throw PreconditionError("joint_centralizer_dim: empty item list");
  const int n = item_size(items.front());
  for (const auto& item : items) require_same_size(n, item_size(item), "joint_centralizer_dim");

  const GroupContext ctx(n);
  const auto basis = orthonormal_basis(ctx);
  const Eigen::Index block = 2 * n * n;
  RealMatrix stacked(block * static_cast<Eigen::Index>(items.size()), ctx.dim_g());
  for (std::size_t s = 0; s < items.size(); ++s) {
    const Matrix& z = item_matrix(items[s]);
    for (int b = 0; b < ctx.dim_g(); ++b) {
      const Matrix& y = basis[b].matrix();
      const Matrix comm = y * z - z * y;
      for (int e = 0; e < n * n; ++e) {
        const cplx v = comm(e % n, e / n);
        stacked(block * static_cast<Eigen::Index>(s) + 2 * e, b) = v.real();
        stacked(block * static_cast<Eigen::Index>(s) + 2 * e + 1, b) = v.imag();
      }
    }
  }
  return numerical_rank(stacked, tol.rank);
}

int joint_centralizer_dim(std::span<const IsotropyItem> items, const ToleranceConfig& tol) {
  const RankResult r = joint_centralizer_spectrum(items, tol);
  const int n = item_size(items.front());
  return n * n - 1 - r.rank;
}

RealVector hermitian_spectrum(const AlgebraElement& j) {
  const Matrix h = cplx(0.0, 1.0) * j.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

bool is_regular(const AlgebraElement& j, const ToleranceConfig& tol) {
  const RealVector ev = hermitian_spectrum(j);
  for (Eigen::Index i = 1; i < ev.size(); ++i) {
    if (!(ev(i) - ev(i - 1) > tol.eigen_gap)) return false;
  }
  return true;
}

bool is_regular_torus_element(const GroupElement& g, const ToleranceConfig& tol) {
  const Matrix& m = g.matrix();
  const Eigen::Index n = m.rows();
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      if (r != c && std::abs(m(r, c)) > tol.structural) return false;
    }
  }
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      if (!(std::abs(m(a, a) - m(b, b)) > tol.eigen_gap)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

double Rng::uniform() {
  // 53 random mantissa bits, shifted off zero.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

AlgebraElement random_algebra(const GroupContext& ctx, Rng& rng) {
  RealVector c(ctx.dim_g());
  for (int a = 0; a < ctx.dim_g(); ++a) c(a) = rng.normal();
  return from_coords(ctx.n(), c);
}

AlgebraElement random_algebra(const GroupContext& ctx, std::uint64_t seed) {
  Rng rng(seed);
  return random_algebra(ctx, rng);
}

GroupElement random_group(const GroupContext& ctx, Rng& rng) {
  return group_exp(random_algebra(ctx, rng));
}

GroupElement random_group(const GroupContext& ctx, std::uint64_t seed) {
  Rng rng(seed);
  return random_group(ctx, rng);
}

}  // namespace redint
