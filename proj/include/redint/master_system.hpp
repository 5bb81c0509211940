#pragma once

// The unreduced master system on T*SU(n): invariant Hamiltonians of J, their
// exact flows, and the constants-of-motion map Psi(g, J) = (g^{-1} J g, J)
// together with executable forms of its structural properties.

#include <span>
#include <string>
#include <vector>

#include "redint/phase_space.hpp"

namespace redint {

/// A point (X, Y) of su(n) x su(n).
struct DoublePoint {
  AlgebraElement X;
  AlgebraElement Y;

  static DoublePoint make(AlgebraElement x, AlgebraElement y);
  int size() const { return X.size(); }
};

/// Frobenius distance on both components.
double distance(const DoublePoint& a, const DoublePoint& b);

/// C_k(J) = Re[i^k tr(J^k)], k >= 2. C_2(J) = <J, J>.
class InvariantHamiltonian {
 public:
  explicit InvariantHamiltonian(int k);

  int degree() const { return k_; }
  Observable observable() const;
  double value(const AlgebraElement& j) const;

 private:
  int k_;
};

/// Part and sign such that Re[i^k z] = sign * part(z).
TraceWord casimir_word(int k, Letter slot);

/// Analytic gradient of C_k at J.
AlgebraElement d_phi(const InvariantHamiltonian& h, const AlgebraElement& j);

/// (exp(t dphi(J0)) g0, J0).
PhasePoint flow(const PhasePoint& x0, const InvariantHamiltonian& h, double t);

DoublePoint psi(const PhasePoint& x);

/// {0, 0.5, ..., 10}.
std::vector<double> default_t_grid();

/// max over t of |psi(flow(x0, H, t)) - psi(x0)|.
double verify_psi_flow_invariance(const PhasePoint& x0, const InvariantHamiltonian& h,
                                  std::span<const double> t_grid);

/// |psi(act(eta, x)) - (eta X eta^{-1}, eta Y eta^{-1})|.
double verify_psi_equivariance(const PhasePoint& x, const GroupElement& eta);

/// Finite sum of trace words in X, Y (and constants): a function on the double.
class DoubleFunction {
 public:
  DoubleFunction() = default;
  explicit DoubleFunction(std::vector<TraceWord> terms);

  static DoubleFunction trace(std::initializer_list<Letter> letters, Part part = Part::Re,
                              double coeff = 1.0);
  /// <A, X> or <A, Y>.
  static DoubleFunction linear(const AlgebraElement& a, Letter slot);
  /// C_k evaluated on the X or Y slot.
  static DoubleFunction casimir(int k, Letter slot);
  static DoubleFunction parse(std::string_view text);

  const std::vector<TraceWord>& terms() const { return terms_; }
  std::string to_string() const { return format_terms(terms_); }

 private:
  std::vector<TraceWord> terms_;
};

double eval(const DoubleFunction& f, const DoublePoint& z);
AlgebraElement grad_x(const DoubleFunction& f, const DoublePoint& z);
AlgebraElement grad_y(const DoubleFunction& f, const DoublePoint& z);

/// dF(z) as (coords(grad_x), coords(grad_y)).
RealVector double_differential(const DoubleFunction& f, const DoublePoint& z);

/// Minus Lie-Poisson on the first factor, plus Lie-Poisson on the second:
/// -<X, [grad_X f, grad_X h]> + <Y, [grad_Y f, grad_Y h]>.
double lp_double_bracket(const DoubleFunction& f, const DoubleFunction& h, const DoublePoint& z);

/// f o Psi as a phase-space observable (X -> Ginv J G, Y -> J).
Observable pullback(const DoubleFunction& f);

/// |{f o Psi, h o Psi}(x) - lp_double_bracket(f, h, Psi(x))|.
double verify_psi_poisson(const DoubleFunction& f, const DoubleFunction& h, const PhasePoint& x);

/// Jacobian of Psi in right-trivialized coordinates. Columns: the directions
/// (e_a g, 0) then (0, e_a); rows: coords of the X part then the Y part.
RealMatrix dpsi_jacobian(const PhasePoint& x);
/// Same matrix by central differences along the exact curves e^{hX} g and J + hX.
RealMatrix dpsi_jacobian_fd(const PhasePoint& x, const ToleranceConfig& tol);

RankResult dpsi_rank_spectrum(const PhasePoint& x, const ToleranceConfig& tol);
int dpsi_rank(const PhasePoint& x, const ToleranceConfig& tol);

/// |C_k(X) - C_k(Y)|.
double casimir_difference_check(const DoublePoint& z, int k);

/// Rank of {d(C_k o pi_2)(x)}_{k=2..n}.
RankResult hamiltonian_differentials_rank(const PhasePoint& x, const ToleranceConfig& tol);

/// Rank of the differentials of the pullbacks of all linear coordinate
/// functions on the double, i.e. the span of d(Psi^* f) over all f.
RankResult constants_differentials_rank(const PhasePoint& x, const ToleranceConfig& tol);

}  // namespace redint
