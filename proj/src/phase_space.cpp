#include "redint/phase_space.hpp"

#include <algorithm>
#include <cmath>

namespace redint {

namespace {

constexpr std::initializer_list<Letter> kPhaseLetters = {Letter::G, Letter::Ginv, Letter::J,
                                                        Letter::Const};

// Keeps g^{-1} alive next to the bound pointers.
struct PhaseBinding {
  Matrix ginv;
  Assignment a;

  explicit PhaseBinding(const PhasePoint& x) : ginv(x.g.matrix().adjoint()) {
    if (x.g.size() != x.J.size()) throw DimensionError("phase point: g and J differ in size");
    a.g = &x.g.matrix();
    a.ginv = &ginv;
    a.j = &x.J.matrix();
  }
};

}  // namespace

PhasePoint PhasePoint::make(GroupElement g, AlgebraElement J) {
  if (g.size() != J.size()) throw DimensionError("phase point: g and J differ in size");
  return PhasePoint{std::move(g), std::move(J)};
}

RealVector TangentVector::flatten() const {
  const RealVector ca = coords(a);
  const RealVector cb = coords(b);
  RealVector out(ca.size() + cb.size());
  out << ca, cb;
  return out;
}

Observable::Observable(std::vector<TraceWord> terms) : terms_(std::move(terms)) {
  for (const auto& w : terms_) {
    if (w.factors.empty()) throw PreconditionError("observable term with empty word");
    if (!w.uses_only(kPhaseLetters)) {
      throw PreconditionError("observable words may only use G, Ginv, J and constants");
    }
  }
}

Observable Observable::trace(std::initializer_list<Letter> letters, Part part, double coeff) {
  return Observable({TraceWord::of(letters, part, coeff)});
}

Observable Observable::linear_in_J(const AlgebraElement& a) {
  TraceWord w;
  w.factors = {Factor::constant(a.matrix()), Factor::of(Letter::J)};
  w.part = Part::Re;
  w.coeff = -1.0;
  return Observable({std::move(w)});
}

Observable Observable::parse(std::string_view text) {
  return Observable(parse_terms(text, {Letter::G, Letter::Ginv, Letter::J}));
}

Observable Observable::operator+(const Observable& o) const {
  std::vector<TraceWord> t = terms_;
  t.insert(t.end(), o.terms_.begin(), o.terms_.end());
  return Observable(std::move(t));
}

Observable Observable::operator*(double s) const {
  std::vector<TraceWord> t = terms_;
  for (auto& w : t) w.coeff *= s;
  return Observable(std::move(t));
}

double eval(const Observable& f, const PhasePoint& x) {
  const PhaseBinding b(x);
  double acc = 0.0;
  for (const auto& w : f.terms()) acc += eval_word(w, b.a);
  return acc;
}

AlgebraElement grad1(const Observable& f, const PhasePoint& x) {
  const PhaseBinding b(x);
  Matrix k = Matrix::Zero(x.size(), x.size());
  for (const auto& w : f.terms()) k += group_cotangent(w, GroupSide::Left, b.a);
  return riesz_gradient(k);
}

AlgebraElement grad1_right(const Observable& f, const PhasePoint& x) {
  const PhaseBinding b(x);
  Matrix k = Matrix::Zero(x.size(), x.size());
  for (const auto& w : f.terms()) k += group_cotangent(w, GroupSide::Right, b.a);
  return riesz_gradient(k);
}

AlgebraElement grad2(const Observable& f, const PhasePoint& x) {
  const PhaseBinding b(x);
  Matrix k = Matrix::Zero(x.size(), x.size());
  for (const auto& w : f.terms()) k += additive_cotangent(w, Letter::J, b.a);
  return riesz_gradient(k);
}

double poisson_bracket(const Observable& f, const Observable& h, const PhasePoint& x) {
  const AlgebraElement n1f = grad1(f, x);
  const AlgebraElement n1h = grad1(h, x);
  const AlgebraElement d2f = grad2(f, x);
  const AlgebraElement d2h = grad2(h, x);
  return inner(n1f, d2h) - inner(n1h, d2f) + inner(x.J, lie_bracket(d2f, d2h));
}

TangentVector hamiltonian_vector(const Observable& f, const PhasePoint& x) {
  const AlgebraElement d2f = grad2(f, x);
  return TangentVector{d2f, lie_bracket(d2f, x.J) - grad1(f, x)};
}

RealVector differential(const Observable& f, const PhasePoint& x) {
  return TangentVector{grad1(f, x), grad2(f, x)}.flatten();
}

PhasePoint move_along(const PhasePoint& x, const TangentVector& v, double t) {
  return PhasePoint{group_exp(v.a * t) * x.g, x.J + v.b * t};
}

PhasePoint act(const GroupElement& eta, const PhasePoint& x) {
  if (eta.size() != x.size()) throw DimensionError("act: size mismatch");
  const Matrix& e = eta.matrix();
  return PhasePoint{GroupElement::unchecked(e * x.g.matrix() * e.adjoint()), adjoint(eta, x.J)};
}

AlgebraElement moment_map(const PhasePoint& x) {
  return x.J - adjoint(x.g.inverse(), x.J);
}

Observable moment_component(const AlgebraElement& x) {
  TraceWord first;
  first.factors = {Factor::of(Letter::J), Factor::constant(x.matrix())};
  first.coeff = -1.0;
  TraceWord second;
  second.factors = {Factor::of(Letter::Ginv), Factor::of(Letter::J), Factor::of(Letter::G),
                    Factor::constant(x.matrix())};
  second.coeff = 1.0;
  return Observable({std::move(first), std::move(second)});
}

double verify_moment_generates(const Observable& f, const AlgebraElement& x_dir,
                               const PhasePoint& x, const ToleranceConfig& tol) {
  const double bracket = poisson_bracket(f, moment_component(x_dir), x);
  const double along = central_difference(
      [&](double t) { return eval(f, act(group_exp(x_dir * t), x)); }, tol.fd_step);
  return std::abs(bracket - along);
}

// ---------------------------------------------------------------------------

double central_difference(const ScalarCurve& f, double h) {
  return (f(h) - f(-h)) / (2.0 * h);
}

double five_point_difference(const ScalarCurve& f, double h) {
  return (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h);
}

double directional_derivative(const std::function<double(const PhasePoint&)>& k,
                              const PhasePoint& x, const TangentVector& v, double h) {
  return five_point_difference([&](double t) { return k(move_along(x, v, t)); }, h);
}

double bracket_with_function(const Observable& f,
                             const std::function<double(const PhasePoint&)>& k,
                             const PhasePoint& x, double h) {
  const TangentVector v = hamiltonian_vector(f, x);
  const double speed = std::sqrt(v.a.norm() * v.a.norm() + v.b.norm() * v.b.norm());
  return -directional_derivative(k, x, v, h / std::max(1.0, speed));
}

// ---------------------------------------------------------------------------

PhasePoint random_phase_point(const GroupContext& ctx, Rng& rng) {
  GroupElement g = random_group(ctx, rng);
  AlgebraElement j = random_algebra(ctx, rng);
  return PhasePoint{std::move(g), std::move(j)};
}

PhasePoint random_phase_point(const GroupContext& ctx, std::uint64_t seed) {
  Rng rng(seed);
  return random_phase_point(ctx, rng);
}

TraceWord random_phase_word(Rng& rng, int max_len) {
  static constexpr Letter letters[] = {Letter::G, Letter::Ginv, Letter::J};
  const int len = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_len));
  TraceWord w;
  for (int i = 0; i < len; ++i) w.factors.push_back(Factor::of(letters[rng.next_u64() % 3]));
  w.part = rng.next_u64() % 2 == 0 ? Part::Re : Part::Im;
  w.coeff = rng.normal();
  return w;
}

Observable random_observable(Rng& rng, int max_len, int max_terms) {
  const int count = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_terms));
  std::vector<TraceWord> terms;
  for (int i = 0; i < count; ++i) terms.push_back(random_phase_word(rng, max_len));
  return Observable(std::move(terms));
}

}  // namespace redint
