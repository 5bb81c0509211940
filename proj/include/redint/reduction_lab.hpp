#pragma once

// Isotropy strata of the conjugation action and rank certificates for the
// reduced system. Every statement about the quotient is checked on M itself:
// a span on the quotient has dimension rank([V; W]) - rank(W), where W holds
// the gauge directions at the point.

#include <vector>

#include "redint/master_system.hpp"

namespace redint {

struct StratumLabel {
  bool regular_J = false;
  bool in_M_star = false;       // trivial Lie-level isotropy of (g, J)
  bool in_M_star_star = false;  // J, J~ regular and trivial isotropy of (J~, J)
  bool regular_moment = false;  // Phi(x) regular

  /// in_M_star_star implies in_M_star and regular_J.
  bool consistent() const { return !in_M_star_star || (in_M_star && regular_J); }
  bool operator==(const StratumLabel&) const = default;
};

StratumLabel classify(const PhasePoint& x, const ToleranceConfig& tol);

/// (Y - Ad_g Y, [Y, J]) for each orthonormal basis element Y.
std::vector<TangentVector> gauge_directions(const PhasePoint& x);

/// (X_i, 0) for an orthonormal basis X_i of the centralizer of J.
/// Throws PreconditionError unless that centralizer has dimension n - 1.
std::vector<TangentVector> hamiltonian_directions(const PhasePoint& x, const ToleranceConfig& tol);

/// Rows = flattened vectors.
RealMatrix stack_rows(const std::vector<TangentVector>& vs);

/// Dimension of a span after quotienting by gauge directions.
struct QuotientSpan {
  int dim = 0;
  RankResult combined;
  RankResult gauge;
};

QuotientSpan quotient_span(const RealMatrix& rows, const RealMatrix& gauge_rows, double tau_rank);

/// Span of the Hamiltonian directions modulo gauge.
QuotientSpan reduced_hamiltonian_span(const PhasePoint& x, const ToleranceConfig& tol);

/// Letters over {X, Y}; value coeff * part tr(word) on the double.
struct InvariantWord {
  std::vector<Letter> letters;
  Part part = Part::Re;
  double coeff = 1.0;

  TraceWord word() const { return TraceWord::of(letters, part, coeff); }
  DoubleFunction function() const { return DoubleFunction({word()}); }
  std::string to_string() const;
};

/// All words over {X, Y} of length 1..max_len, one representative per class
/// under cyclic rotation and reversal, each with both parts.
std::vector<InvariantWord> word_generators(int max_len);

/// Rows d(P o Psi)(x) = DPsi(x)^T dP(Psi(x)).
RealMatrix invariant_differentials(const PhasePoint& x, const std::vector<InvariantWord>& gens);

/// Rank of the stacked rows of invariant_differentials.
RankResult reduced_constants_span(const PhasePoint& x, const std::vector<InvariantWord>& gens,
                                  const ToleranceConfig& tol);

struct PlateauSweep {
  std::vector<int> max_len;
  std::vector<std::size_t> generators;
  std::vector<int> rank;
  int plateau_len = 0;   // first length at which the final rank is reached
  int plateau_rank = 0;
};

PlateauSweep constants_span_sweep(const PhasePoint& x, int max_len, const ToleranceConfig& tol);

/// |{C_k o pi_2, P o Psi}(x)|.
double centrality_check(const PhasePoint& x, int k, const InvariantWord& p);

/// C_k o Phi as a trace-word observable (expands (J - Ginv J G)^k).
Observable casimir_of_moment(int k);

/// Span of {d(C_k o Phi)(x)}_{k=2..n} modulo gauge directions.
QuotientSpan leaf_codim_check(const PhasePoint& x, const ToleranceConfig& tol);

/// Rank of {dP(z)} over the generators.
RankResult invariant_span_double(const DoublePoint& z, const std::vector<InvariantWord>& gens,
                                 const ToleranceConfig& tol);

/// 2 dim_g - (dim_g - dim centralizer{X, Y}).
int orbit_codimension_double(const DoublePoint& z, const ToleranceConfig& tol);

/// Joint Lie-level isotropy dimension of Psi(x) = (J~, J).
int psi_isotropy_dim(const PhasePoint& x, const ToleranceConfig& tol);

/// Integer test of r < (dim_g - r) / 2, written as 2r < dim_g - r.
bool rank_is_degenerate(const GroupContext& ctx);
/// 2r == dim_g - r ("only Liouville integrable").
bool rank_is_liouville_boundary(const GroupContext& ctx);

}  // namespace redint
