#pragma once

// The phase space M = SU(n) x su(n) in the right-trivialization, trace-word
// observables with their su(n)-valued derivatives, the canonical Poisson
// bracket, the conjugation action and its moment map.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "redint/lie_core.hpp"
#include "redint/trace_word.hpp"

namespace redint {

struct PhasePoint {
  GroupElement g;
  AlgebraElement J;

  /// Throws DimensionError when g and J differ in size.
  static PhasePoint make(GroupElement g, AlgebraElement J);
  int size() const { return g.size(); }
};

/// Tangent vector at (g, J) in right-trivialized form: the curve
/// t -> (e^{ta} g, J + t b).
struct TangentVector {
  AlgebraElement a;
  AlgebraElement b;

  /// Coordinates (coords(a), coords(b)), length 2 (n^2 - 1).
  RealVector flatten() const;
};

/// Finite sum of trace words in the letters G, Ginv, J (and constants).
class Observable {
 public:
  Observable() = default;
  explicit Observable(std::vector<TraceWord> terms);

  /// coeff * part tr(letters).
  static Observable trace(std::initializer_list<Letter> letters, Part part = Part::Re,
                          double coeff = 1.0);
  /// <A, J> = -Re tr(A J).
  static Observable linear_in_J(const AlgebraElement& a);
  static Observable parse(std::string_view text);

  const std::vector<TraceWord>& terms() const { return terms_; }
  std::string to_string() const { return format_terms(terms_); }

  Observable operator+(const Observable& o) const;
  Observable operator*(double s) const;

 private:
  std::vector<TraceWord> terms_;
};

double eval(const Observable& f, const PhasePoint& x);

/// Left derivative: <X, grad1 F> = d/dt F(e^{tX} g, J).
AlgebraElement grad1(const Observable& f, const PhasePoint& x);
/// Right derivative: <X, grad1_right F> = d/dt F(g e^{tX}, J). Not used by the bracket.
AlgebraElement grad1_right(const Observable& f, const PhasePoint& x);
/// <X, grad2 F> = d/dt F(g, J + tX).
AlgebraElement grad2(const Observable& f, const PhasePoint& x);

/// {F,H} = <grad1 F, grad2 H> - <grad1 H, grad2 F> + <J, [grad2 F, grad2 H]>.
double poisson_bracket(const Observable& f, const Observable& h, const PhasePoint& x);

/// Vector field X_F with {K, F}(x) = d/dt K(x(t)) along X_F for every K:
/// a = grad2 F, b = [grad2 F, J] - grad1 F.
TangentVector hamiltonian_vector(const Observable& f, const PhasePoint& x);

/// The covector dF(x) in the coordinates dual to TangentVector::flatten.
RealVector differential(const Observable& f, const PhasePoint& x);

/// (e^{t a} g, J + t b).
PhasePoint move_along(const PhasePoint& x, const TangentVector& v, double t);

/// (eta g eta^{-1}, eta J eta^{-1}).
PhasePoint act(const GroupElement& eta, const PhasePoint& x);

/// J - g^{-1} J g.
AlgebraElement moment_map(const PhasePoint& x);

/// <Phi(.), X> as an observable.
Observable moment_component(const AlgebraElement& x);

/// |{F, Phi_X}(x) - d/dt F(act(e^{tX}, x))|, the derivative by central
/// differences with step tol.fd_step.
double verify_moment_generates(const Observable& f, const AlgebraElement& x_dir,
                               const PhasePoint& x, const ToleranceConfig& tol);

// ---------------------------------------------------------------------------
// Finite differences

using ScalarCurve = std::function<double(double)>;

double central_difference(const ScalarCurve& f, double h);
/// Fourth-order five-point stencil.
double five_point_difference(const ScalarCurve& f, double h);

/// d/dt K(move_along(x, v, t)) at t = 0 with the five-point stencil.
double directional_derivative(const std::function<double(const PhasePoint&)>& k,
                              const PhasePoint& x, const TangentVector& v, double h);

/// {F, K}(x) for an arbitrary smooth function K, as minus the derivative of K
/// along the Hamiltonian vector field of F. The step h is divided by the
/// speed of that field when it exceeds 1.
double bracket_with_function(const Observable& f,
                             const std::function<double(const PhasePoint&)>& k,
                             const PhasePoint& x, double h);

// ---------------------------------------------------------------------------
// Sampling

PhasePoint random_phase_point(const GroupContext& ctx, Rng& rng);
PhasePoint random_phase_point(const GroupContext& ctx, std::uint64_t seed);

/// Random trace word over {G, Ginv, J} with length in [1, max_len],
/// random part and a standard-normal coefficient.
TraceWord random_phase_word(Rng& rng, int max_len);
Observable random_observable(Rng& rng, int max_len, int max_terms);

}  // namespace redint
