#include "redint/reduction_lab.hpp"

#include <algorithm>
#include <bit>

namespace redint {

StratumLabel classify(const PhasePoint& x, const ToleranceConfig& tol) {
  StratumLabel label;
  label.regular_J = is_regular(x.J, tol);
  const IsotropyItem gj[] = {x.g, x.J};
  label.in_M_star = joint_centralizer_dim(gj, tol) == 0;
  const DoublePoint z = psi(x);
  // Lie-level isotropy of (g, J) sits inside that of (J~, J), so membership in
  // M_** is only tested on top of M_*.
  label.in_M_star_star = label.in_M_star && label.regular_J && is_regular(z.X, tol) &&
                         psi_isotropy_dim(x, tol) == 0;
  label.regular_moment = is_regular(moment_map(x), tol);
  return label;
}

std::vector<TangentVector> gauge_directions(const PhasePoint& x) {
  const GroupContext ctx(x.size());
  std::vector<TangentVector> out;
  for (const auto& y : orthonormal_basis(ctx)) {
    out.push_back(TangentVector{y - adjoint(x.g, y), lie_bracket(y, x.J)});
  }
  return out;
}

std::vector<TangentVector> hamiltonian_directions(const PhasePoint& x, const ToleranceConfig& tol) {
  const GroupContext ctx(x.size());
  const RealMatrix kernel = null_space(ad_matrix(x.J), tol.rank);
  if (kernel.cols() != ctx.rank()) {
    throw PreconditionError("hamiltonian_directions: centralizer of J has dimension " +
                            std::to_string(kernel.cols()) + ", expected " +
                            std::to_string(ctx.rank()));
  }
  std::vector<TangentVector> out;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    out.push_back(TangentVector{from_coords(ctx.n(), kernel.col(c)), AlgebraElement::zero(ctx.n())});
  }
  return out;
}

RealMatrix stack_rows(const std::vector<TangentVector>& vs) {
  if (vs.empty()) return RealMatrix{};
  const RealVector first = vs.front().flatten();
  RealMatrix m(static_cast<Eigen::Index>(vs.size()), first.size());
  m.row(0) = first;
  for (std::size_t i = 1; i < vs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vs[i].flatten();
  return m;
}

QuotientSpan quotient_span(const RealMatrix& rows, const RealMatrix& gauge_rows, double tau_rank) {
  QuotientSpan out;
  out.combined = equilibrated_rank(vstack(rows, gauge_rows), tau_rank);
  out.gauge = equilibrated_rank(gauge_rows, tau_rank);
  out.dim = out.combined.rank - out.gauge.rank;
  return out;
}

QuotientSpan reduced_hamiltonian_span(const PhasePoint& x, const ToleranceConfig& tol) {
  return quotient_span(stack_rows(hamiltonian_directions(x, tol)),
                       stack_rows(gauge_directions(x)), tol.rank);
}

// ---------------------------------------------------------------------------

std::string InvariantWord::to_string() const { return format_terms(std::vector{word()}); }

std::vector<InvariantWord> word_generators(int max_len) {
  if (max_len < 1) throw PreconditionError("word_generators: max_len must be >= 1");
  std::vector<InvariantWord> out;
  for (int len = 1; len <= max_len; ++len) {
    for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
      std::vector<Letter> w(static_cast<std::size_t>(len));
      for (int i = 0; i < len; ++i) w[i] = (mask >> (len - 1 - i)) & 1u ? Letter::Y : Letter::X;
      // Keep w only if it is the smallest among its rotations and the
      // rotations of its reversal.
      bool canonical = true;
      std::vector<Letter> rev(w.rbegin(), w.rend());
      for (const auto* base : {&w, &rev}) {
        for (int s = 0; s < len && canonical; ++s) {
          std::vector<Letter> rot(base->begin() + s, base->end());
          rot.insert(rot.end(), base->begin(), base->begin() + s);
          if (rot < w) canonical = false;
        }
      }
      if (!canonical) continue;
      out.push_back(InvariantWord{w, Part::Re, 1.0});
      out.push_back(InvariantWord{w, Part::Im, 1.0});
    }
  }
  return out;
}

RealMatrix invariant_differentials(const PhasePoint& x, const std::vector<InvariantWord>& gens) {
  const RealMatrix jac = dpsi_jacobian(x);
  const DoublePoint z = psi(x);
  RealMatrix rows(static_cast<Eigen::Index>(gens.size()), jac.cols());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    rows.row(static_cast<Eigen::Index>(i)) =
        (jac.transpose() * double_differential(gens[i].function(), z)).transpose();
  }
  return rows;
}

RankResult reduced_constants_span(const PhasePoint& x, const std::vector<InvariantWord>& gens,
                                  const ToleranceConfig& tol) {
  return equilibrated_rank(invariant_differentials(x, gens), tol.rank);
}

PlateauSweep constants_span_sweep(const PhasePoint& x, int max_len, const ToleranceConfig& tol) {
  PlateauSweep sweep;
  for (int len = 1; len <= max_len; ++len) {
    const auto gens = word_generators(len);
    sweep.max_len.push_back(len);
    sweep.generators.push_back(gens.size());
    sweep.rank.push_back(reduced_constants_span(x, gens, tol).rank);
  }
  sweep.plateau_rank = sweep.rank.back();
  for (std::size_t i = sweep.rank.size(); i-- > 0;) {
    if (sweep.rank[i] != sweep.plateau_rank) break;
    sweep.plateau_len = sweep.max_len[i];
  }
  return sweep;
}

double centrality_check(const PhasePoint& x, int k, const InvariantWord& p) {
  return std::abs(
      poisson_bracket(InvariantHamiltonian(k).observable(), pullback(p.function()), x));
}

Observable casimir_of_moment(int k) {
  const TraceWord base = casimir_word(k, Letter::J);
  std::vector<TraceWord> terms;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    TraceWord w;
    w.part = base.part;
    w.coeff = base.coeff * (std::popcount(mask) % 2 == 0 ? 1.0 : -1.0);
    for (int i = 0; i < k; ++i) {
      if ((mask >> i) & 1u) {
        w.factors.push_back(Factor::of(Letter::Ginv));
        w.factors.push_back(Factor::of(Letter::J));
        w.factors.push_back(Factor::of(Letter::G));
      } else {
        w.factors.push_back(Factor::of(Letter::J));
      }
    }
    terms.push_back(std::move(w));
  }
  return Observable(std::move(terms));
}

QuotientSpan leaf_codim_check(const PhasePoint& x, const ToleranceConfig& tol) {
  const int n = x.size();
  RealMatrix rows(n - 1, 2 * (n * n - 1));
  for (int k = 2; k <= n; ++k) rows.row(k - 2) = differential(casimir_of_moment(k), x);
  return quotient_span(rows, stack_rows(gauge_directions(x)), tol.rank);
}

RankResult invariant_span_double(const DoublePoint& z, const std::vector<InvariantWord>& gens,
                                 const ToleranceConfig& tol) {
  const int d = z.size() * z.size() - 1;
  RealMatrix rows(static_cast<Eigen::Index>(gens.size()), 2 * d);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    rows.row(static_cast<Eigen::Index>(i)) = double_differential(gens[i].function(), z);
  }
  return equilibrated_rank(rows, tol.rank);
}

int orbit_codimension_double(const DoublePoint& z, const ToleranceConfig& tol) {
  const GroupContext ctx(z.size());
  const IsotropyItem items[] = {z.X, z.Y};
  const int orbit_dim = ctx.dim_g() - joint_centralizer_dim(items, tol);
  return 2 * ctx.dim_g() - orbit_dim;
}

int psi_isotropy_dim(const PhasePoint& x, const ToleranceConfig& tol) {
  const DoublePoint z = psi(x);
  const IsotropyItem items[] = {z.X, z.Y};
  return joint_centralizer_dim(items, tol);
}

bool rank_is_degenerate(const GroupContext& ctx) {
  return 2 * ctx.rank() < ctx.dim_g() - ctx.rank();
}

bool rank_is_liouville_boundary(const GroupContext& ctx) {
  return 2 * ctx.rank() == ctx.dim_g() - ctx.rank();
}

}  // namespace redint
