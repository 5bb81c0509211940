#include "redint/master_system.hpp"

#include <cmath>

namespace redint {

namespace {

constexpr std::initializer_list<Letter> kDoubleLetters = {Letter::X, Letter::Y, Letter::Const};
constexpr Letter kPsiOfX[] = {Letter::Ginv, Letter::J, Letter::G};
constexpr Letter kPsiOfY[] = {Letter::J};

Assignment bind(const DoublePoint& z) {
  Assignment a;
  a.x = &z.X.matrix();
  a.y = &z.Y.matrix();
  return a;
}

AlgebraElement slot_gradient(const DoubleFunction& f, const DoublePoint& z, Letter slot) {
  const Assignment a = bind(z);
  Matrix k = Matrix::Zero(z.size(), z.size());
  for (const auto& w : f.terms()) k += additive_cotangent(w, slot, a);
  return riesz_gradient(k);
}

RealVector psi_coords(const PhasePoint& x) {
  const DoublePoint z = psi(x);
  const RealVector cx = coords(z.X);
  const RealVector cy = coords(z.Y);
  RealVector out(cx.size() + cy.size());
  out << cx, cy;
  return out;
}

}  // namespace

DoublePoint DoublePoint::make(AlgebraElement x, AlgebraElement y) {
  if (x.size() != y.size()) throw DimensionError("double point: components differ in size");
  return DoublePoint{std::move(x), std::move(y)};
}

double distance(const DoublePoint& a, const DoublePoint& b) {
  return std::sqrt((a.X.matrix() - b.X.matrix()).squaredNorm() +
                   (a.Y.matrix() - b.Y.matrix()).squaredNorm());
}

// ---------------------------------------------------------------------------

TraceWord casimir_word(int k, Letter slot) {
  if (k < 2) throw PreconditionError("Casimir degree must be >= 2");
  std::vector<Letter> letters(static_cast<std::size_t>(k), slot);
  switch (k % 4) {
    case 0: return TraceWord::of(letters, Part::Re, 1.0);
    case 1: return TraceWord::of(letters, Part::Im, -1.0);
    case 2: return TraceWord::of(letters, Part::Re, -1.0);
    default: return TraceWord::of(letters, Part::Im, 1.0);
  }
}

InvariantHamiltonian::InvariantHamiltonian(int k) : k_(k) {
  if (k < 2) throw PreconditionError("InvariantHamiltonian: degree must be >= 2");
}

Observable InvariantHamiltonian::observable() const {
  return Observable({casimir_word(k_, Letter::J)});
}

double InvariantHamiltonian::value(const AlgebraElement& j) const {
  Assignment a;
  a.j = &j.matrix();
  return eval_word(casimir_word(k_, Letter::J), a);
}

AlgebraElement d_phi(const InvariantHamiltonian& h, const AlgebraElement& j) {
  // d/dt Re[i^k tr((J + tX)^k)] = Re tr(X k i^k J^{k-1}).
  const int k = h.degree();
  const Eigen::Index n = j.size();
  Matrix power = Matrix::Identity(n, n);
  for (int i = 0; i < k - 1; ++i) power = power * j.matrix();
  static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return riesz_gradient(static_cast<double>(k) * ipow[k % 4] * power);
}

PhasePoint flow(const PhasePoint& x0, const InvariantHamiltonian& h, double t) {
  return PhasePoint{group_exp(d_phi(h, x0.J) * t) * x0.g, x0.J};
}

DoublePoint psi(const PhasePoint& x) {
  return DoublePoint{adjoint(x.g.inverse(), x.J), x.J};
}

std::vector<double> default_t_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.5 * i);
  return grid;
}

double verify_psi_flow_invariance(const PhasePoint& x0, const InvariantHamiltonian& h,
                                  std::span<const double> t_grid) {
  const DoublePoint start = psi(x0);
  double worst = 0.0;
  for (double t : t_grid) worst = std::max(worst, distance(psi(flow(x0, h, t)), start));
  return worst;
}

double verify_psi_equivariance(const PhasePoint& x, const GroupElement& eta) {
  const DoublePoint z = psi(x);
  const DoublePoint conj{adjoint(eta, z.X), adjoint(eta, z.Y)};
  return distance(psi(act(eta, x)), conj);
}

// ---------------------------------------------------------------------------

DoubleFunction::DoubleFunction(std::vector<TraceWord> terms) : terms_(std::move(terms)) {
  for (const auto& w : terms_) {
    if (w.factors.empty()) throw PreconditionError("double function term with empty word");
    if (!w.uses_only(kDoubleLetters)) {
      throw PreconditionError("double functions may only use X, Y and constants");
    }
  }
}

DoubleFunction DoubleFunction::trace(std::initializer_list<Letter> letters, Part part,
                                     double coeff) {
  return DoubleFunction({TraceWord::of(letters, part, coeff)});
}

DoubleFunction DoubleFunction::linear(const AlgebraElement& a, Letter slot) {
  if (slot != Letter::X && slot != Letter::Y) throw PreconditionError("slot must be X or Y");
  TraceWord w;
  w.factors = {Factor::constant(a.matrix()), Factor::of(slot)};
  w.coeff = -1.0;
  return DoubleFunction({std::move(w)});
}

DoubleFunction DoubleFunction::casimir(int k, Letter slot) {
  if (slot != Letter::X && slot != Letter::Y) throw PreconditionError("slot must be X or Y");
  return DoubleFunction({casimir_word(k, slot)});
}

DoubleFunction DoubleFunction::parse(std::string_view text) {
  return DoubleFunction(parse_terms(text, {Letter::X, Letter::Y}));
}

double eval(const DoubleFunction& f, const DoublePoint& z) {
  const Assignment a = bind(z);
  double acc = 0.0;
  for (const auto& w : f.terms()) acc += eval_word(w, a);
  return acc;
}

AlgebraElement grad_x(const DoubleFunction& f, const DoublePoint& z) {
  return slot_gradient(f, z, Letter::X);
}

AlgebraElement grad_y(const DoubleFunction& f, const DoublePoint& z) {
  return slot_gradient(f, z, Letter::Y);
}

RealVector double_differential(const DoubleFunction& f, const DoublePoint& z) {
  const RealVector cx = coords(grad_x(f, z));
  const RealVector cy = coords(grad_y(f, z));
  RealVector out(cx.size() + cy.size());
  out << cx, cy;
  return out;
}

double lp_double_bracket(const DoubleFunction& f, const DoubleFunction& h, const DoublePoint& z) {
  return -inner(z.X, lie_bracket(grad_x(f, z), grad_x(h, z))) +
         inner(z.Y, lie_bracket(grad_y(f, z), grad_y(h, z)));
}

Observable pullback(const DoubleFunction& f) {
  std::vector<TraceWord> terms;
  terms.reserve(f.terms().size());
  for (const auto& w : f.terms()) {
    terms.push_back(substitute(substitute(w, Letter::X, kPsiOfX), Letter::Y, kPsiOfY));
  }
  return Observable(std::move(terms));
}

double verify_psi_poisson(const DoubleFunction& f, const DoubleFunction& h, const PhasePoint& x) {
  return std::abs(poisson_bracket(pullback(f), pullback(h), x) - lp_double_bracket(f, h, psi(x)));
}

// ---------------------------------------------------------------------------

RealMatrix dpsi_jacobian(const PhasePoint& x) {
  const GroupContext ctx(x.size());
  const auto basis = orthonormal_basis(ctx);
  const int d = ctx.dim_g();
  const GroupElement ginv = x.g.inverse();
  RealMatrix jac = RealMatrix::Zero(2 * d, 2 * d);
  for (int a = 0; a < d; ++a) {
    // (e_a g, 0): X' = g^{-1} [J, e_a] g, Y' = 0.
    jac.block(0, a, d, 1) = coords(adjoint(ginv, lie_bracket(x.J, basis[a])));
    // (0, e_a): X' = g^{-1} e_a g, Y' = e_a.
    jac.block(0, d + a, d, 1) = coords(adjoint(ginv, basis[a]));
    jac(d + a, d + a) = 1.0;
  }
  return jac;
}

RealMatrix dpsi_jacobian_fd(const PhasePoint& x, const ToleranceConfig& tol) {
  const GroupContext ctx(x.size());
  const auto basis = orthonormal_basis(ctx);
  const int d = ctx.dim_g();
  const double h = tol.fd_step;
  RealMatrix jac(2 * d, 2 * d);
  for (int a = 0; a < d; ++a) {
    const PhasePoint gp{group_exp(basis[a] * h) * x.g, x.J};
    const PhasePoint gm{group_exp(basis[a] * -h) * x.g, x.J};
    jac.col(a) = (psi_coords(gp) - psi_coords(gm)) / (2.0 * h);
    const PhasePoint jp{x.g, x.J + basis[a] * h};
    const PhasePoint jm{x.g, x.J - basis[a] * h};
    jac.col(d + a) = (psi_coords(jp) - psi_coords(jm)) / (2.0 * h);
  }
  return jac;
}

RankResult dpsi_rank_spectrum(const PhasePoint& x, const ToleranceConfig& tol) {
  return numerical_rank(dpsi_jacobian(x), tol.rank);
}

int dpsi_rank(const PhasePoint& x, const ToleranceConfig& tol) {
  return dpsi_rank_spectrum(x, tol).rank;
}

double casimir_difference_check(const DoublePoint& z, int k) {
  return std::abs(eval(DoubleFunction::casimir(k, Letter::X), z) -
                  eval(DoubleFunction::casimir(k, Letter::Y), z));
}

RankResult hamiltonian_differentials_rank(const PhasePoint& x, const ToleranceConfig& tol) {
  const int n = x.size();
  RealMatrix rows(n - 1, 2 * (n * n - 1));
  for (int k = 2; k <= n; ++k) {
    rows.row(k - 2) = differential(InvariantHamiltonian(k).observable(), x);
  }
  return equilibrated_rank(rows, tol.rank);
}

RankResult constants_differentials_rank(const PhasePoint& x, const ToleranceConfig& tol) {
  const GroupContext ctx(x.size());
  const auto basis = orthonormal_basis(ctx);
  const int d = ctx.dim_g();
  RealMatrix rows(2 * d, 2 * d);
  for (int a = 0; a < d; ++a) {
    rows.row(a) = differential(pullback(DoubleFunction::linear(basis[a], Letter::X)), x);
    rows.row(d + a) = differential(pullback(DoubleFunction::linear(basis[a], Letter::Y)), x);
  }
  return numerical_rank(rows, tol.rank);
}

}  // namespace redint
