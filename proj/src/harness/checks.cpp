#include "redint/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>

#include "redint/apposition.hpp"
#include "redint/su2_model.hpp"

namespace redint {

namespace {

constexpr double kStencilStep = 1e-3;
constexpr double kAntisymmetryBound = 1e-14;
constexpr double kLeibnizBound = 1e-9;
constexpr double kJacobiBound = 1e-6;
constexpr double kPoissonMapBound = 1e-8;
constexpr double kCentralityBound = 1e-8;
constexpr double kMomentResidual = 1e-10;
constexpr double kSlicePrintedBound = 1e-12;
constexpr double kDynamicsBound = 1e-6;
constexpr double kEquilibriumBound = 1e-8;
constexpr double kOracleDriftBound = 1e-8;
constexpr int kDynamicsSteps = 10000;
constexpr int kBracketWordLen = 3;
constexpr int kCentralityWordLen = 4;
constexpr int kPoissonWordLen = 4;

double inf() { return std::numeric_limits<double>::infinity(); }

// Per-check stream so that two checks with the same master seed do not reuse
// the same points.
std::uint64_t check_seed(const ExperimentConfig& cfg, std::string_view name) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  return derive_seed(cfg.seed, h);
}

Rng sample_rng(const ExperimentConfig& cfg, std::string_view name, int i) {
  return Rng(derive_seed(check_seed(cfg, name), static_cast<std::uint64_t>(i)));
}

template <typename T>
std::vector<T> over_samples(const ExperimentConfig& cfg, std::string_view name,
                            const std::function<T(Rng&)>& body) {
  const std::string key(name);
  return ordered_parallel_map<T>(cfg.samples, [&cfg, &key, &body](int i) {
    Rng rng = sample_rng(cfg, key, i);
    return body(rng);
  });
}

// Random phase point with regular J; redraws (rarely) otherwise.
PhasePoint regular_point(const GroupContext& ctx, Rng& rng, const ToleranceConfig& tol) {
  for (;;) {
    PhasePoint x = random_phase_point(ctx, rng);
    if (is_regular(x.J, tol)) return x;
  }
}

nlohmann::ordered_json to_json(const RealVector& v) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::vector<InvariantWord> capped_generators(int max_len, int cap) {
  return word_generators(std::min(max_len, cap));
}

// --- checks --------------------------------------------------------------

struct BracketSample {
  double anti = 0.0, leibniz = 0.0, jacobi = 0.0;
};

void bracket_axioms(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const GroupContext ctx(cfg.n);
  const int len = std::min(cfg.effective_max_word_len(), kBracketWordLen);
  const auto res = over_samples<BracketSample>(cfg, rep.check_name, [&](Rng& rng) {
    const PhasePoint x = random_phase_point(ctx, rng);
    const Observable f = random_observable(rng, len, 2);
    const Observable g = random_observable(rng, len, 2);
    const Observable h = random_observable(rng, len, 2);
    BracketSample s;
    s.anti = std::abs(poisson_bracket(f, h, x) + poisson_bracket(h, f, x));
    const auto product = [&](const PhasePoint& y) { return eval(f, y) * eval(g, y); };
    const double lhs = -bracket_with_function(h, product, x, kStencilStep);
    const double rhs = eval(f, x) * poisson_bracket(g, h, x) + eval(g, x) * poisson_bracket(f, h, x);
    s.leibniz = std::abs(lhs - rhs);
    const auto gh = [&](const PhasePoint& y) { return poisson_bracket(g, h, y); };
    const auto hf = [&](const PhasePoint& y) { return poisson_bracket(h, f, y); };
    const auto fg = [&](const PhasePoint& y) { return poisson_bracket(f, g, y); };
    s.jacobi = std::abs(bracket_with_function(f, gh, x, kStencilStep) +
                        bracket_with_function(g, hf, x, kStencilStep) +
                        bracket_with_function(h, fg, x, kStencilStep));
    return s;
  });
  double anti = 0, leib = 0, jac = 0;
  for (const auto& s : res) {
    anti = std::max(anti, s.anti);
    leib = std::max(leib, s.leibniz);
    jac = std::max(jac, s.jacobi);
  }
  rep.observe("antisymmetry_max", anti);
  rep.observe("leibniz_max", leib);
  rep.observe("jacobi_max", jac);
  rep.observe_int("word_len", len);
  rep.expect("antisymmetry_max", "<=", kAntisymmetryBound, "exact identity, roundoff bound");
  rep.expect("leibniz_max", "<=", kLeibnizBound, "five-point derivative oracle");
  rep.expect("jacobi_max", "<=", kJacobiBound, "five-point derivative oracle");
}

void psi_poisson(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const GroupContext ctx(cfg.n);
  const auto gens = capped_generators(cfg.effective_max_word_len(), kPoissonWordLen);
  const auto res = over_samples<double>(cfg, rep.check_name, [&](Rng& rng) {
    const PhasePoint x = random_phase_point(ctx, rng);
    const auto pick = [&] {
      InvariantWord w = gens[static_cast<std::size_t>(rng.next_u64() % gens.size())];
      w.coeff = rng.normal();
      return w.function();
    };
    const DoubleFunction f = pick();
    const DoubleFunction h = pick();
    return verify_psi_poisson(f, h, x);
  });
  double worst = 0;
  for (double d : res) worst = std::max(worst, d);
  rep.observe("poisson_map_defect_max", worst);
  rep.observe_int("generators", static_cast<long long>(gens.size()));
  rep.expect("poisson_map_defect_max", "<=", kPoissonMapBound, "Psi is a Poisson map");
}

void flow_conservation(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const GroupContext ctx(cfg.n);
  std::vector<double> grid;
  for (int k = 0; 0.5 * k <= cfg.t_max + 1e-12; ++k) grid.push_back(0.5 * k);
  if (grid.back() < cfg.t_max) grid.push_back(cfg.t_max);
  const auto res = over_samples<std::vector<double>>(cfg, rep.check_name, [&](Rng& rng) {
    const PhasePoint x = random_phase_point(ctx, rng);
    std::vector<double> per_k;
    for (int k = 2; k <= cfg.n; ++k) {
      per_k.push_back(verify_psi_flow_invariance(x, InvariantHamiltonian(k), grid));
    }
    return per_k;
  });
  double worst = 0;
  for (int k = 2; k <= cfg.n; ++k) {
    double wk = 0;
    for (const auto& r : res) wk = std::max(wk, r[static_cast<std::size_t>(k - 2)]);
    rep.observe("defect_C" + std::to_string(k), wk);
    worst = std::max(worst, wk);
  }
  rep.observe("defect_max", worst);
  rep.observe("t_max", grid.back());
  rep.expect("defect_max", "<=", cfg.tolerances.conservation, "Psi constant along free flows");
}

struct RankSample {
  int rank = 0;
  double tail = 0.0;    // sigma_{rank+1} / sigma_1
  double gap = 0.0;     // sigma_rank / sigma_1
  double fd_defect = 0.0;
};

void dpsi_rank_check(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const GroupContext ctx(cfg.n);
  const ToleranceConfig& tol = cfg.tolerances;
  const auto res = over_samples<RankSample>(cfg, rep.check_name, [&](Rng& rng) {
    const PhasePoint x = regular_point(ctx, rng, tol);
    const RankResult rr = dpsi_rank_spectrum(x, tol);
    RankSample s;
    s.rank = rr.rank;
    const auto& sv = rr.singular_values;
    const double top = sv.size() > 0 ? sv(0) : 0.0;
    if (top > 0) {
      s.gap = rr.rank > 0 ? sv(rr.rank - 1) / top : 0.0;
      s.tail = rr.rank < sv.size() ? sv(rr.rank) / top : 0.0;
    }
    const RealMatrix a = dpsi_jacobian(x);
    s.fd_defect = (a - dpsi_jacobian_fd(x, tol)).norm() / std::max(1.0, a.norm());
    return s;
  });
  int lo = std::numeric_limits<int>::max(), hi = 0;
  double tail = 0, gap = inf(), fd = 0;
  for (const auto& s : res) {
    lo = std::min(lo, s.rank);
    hi = std::max(hi, s.rank);
    tail = std::max(tail, s.tail);
    gap = std::min(gap, s.gap);
    fd = std::max(fd, s.fd_defect);
  }
  Rng rng = sample_rng(cfg, rep.check_name, -1);
  const PhasePoint zero_j{random_group(ctx, rng), AlgebraElement::zero(cfg.n)};
  const RankResult at_zero = dpsi_rank_spectrum(zero_j, tol);

  rep.observe_int("rank_min", lo);
  rep.observe_int("rank_max", hi);
  rep.observe("sigma_gap_min", gap);
  rep.observe("sigma_tail_max", tail);
  rep.observe("fd_jacobian_defect_max", fd);
  rep.observe_int("rank_at_J_zero", at_zero.rank);
  rep.details["singular_values_at_J_zero"] = to_json(at_zero.singular_values);
  const double expected = ctx.dim_M() - ctx.rank();
  rep.expect("rank_min", "==", expected, "dim M - r at regular J");
  rep.expect("rank_max", "==", expected, "dim M - r at regular J");
  rep.expect("fd_jacobian_defect_max", "<=", tol.fd, "central-difference Jacobian");
  rep.expect("rank_at_J_zero", "==", ctx.dim_g(), "dim g at J = 0");
}

struct CensusSample {
  bool star_star = false, consistent = false, invariant = false;
};

void strata_census(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const GroupContext ctx(cfg.n);
  const ToleranceConfig& tol = cfg.tolerances;
  const auto res = over_samples<CensusSample>(cfg, rep.check_name, [&](Rng& rng) {
    const PhasePoint x = random_phase_point(ctx, rng);
    const StratumLabel label = classify(x, tol);
    const GroupElement eta = random_group(ctx, rng);
    return CensusSample{label.in_M_star_star, label.consistent(), classify(act(eta, x), tol) == label};
  });
  long long star_star = 0, inconsistent = 0, variant = 0;
  for (const auto& s : res) {
    star_star += s.star_star;
    inconsistent += !s.consistent;
    variant += !s.invariant;
  }
  rep.observe("frequency_M_star_star", static_cast<double>(star_star) / cfg.samples);
  rep.observe_int("inconsistent_labels", inconsistent);
  rep.observe_int("non_invariant_labels", variant);
  rep.expect("frequency_M_star_star", "==", 1.0, "M_** dense open in M_*");
  rep.expect("inconsistent_labels", "==", 0, "M_** inside M_* with regular J");
  rep.expect("non_invariant_labels", "==", 0, "strata are conjugation invariant");

  // (g, J) = (1, 0): the whole group fixes it
  const StratumLabel origin = classify(
      PhasePoint{GroupElement::identity(cfg.n), AlgebraElement::zero(cfg.n)}, tol);
  rep.observe_bool("origin_in_M_star", origin.in_M_star);
  rep.expect("origin_in_M_star", "==", 0, "G fixes (1, 0)");

  Rng rng = sample_rng(cfg, rep.check_name, -1);
  const AppositionFrame frame = build_frame(cfg.n, tol);
  const GroupElement g = random_torus_element(ctx, rng);
  const MomentSolution sol = solve_moment_equation(g, random_tprime(frame, rng), tol);
  rep.observe_bool("apposition_pair_in_M_star", classify(PhasePoint{g, sol.J}, tol).in_M_star);
  rep.expect("apposition_pair_in_M_star", "==", 1, "trivial isotropy of apposition pairs");

  if (cfg.n == 2) {
    const StratumLabel ex = classify(slice_point({std::numbers::pi / 2.0, 0.0, 1.0}), tol);
    rep.observe_bool("su2_exceptional_in_M_star", ex.in_M_star);
    rep.observe_bool("su2_exceptional_in_M_star_star", ex.in_M_star_star);
    rep.expect("su2_exceptional_in_M_star", "==", 1, "SU(2) slice at (p, q) = (0, pi/2)");
    rep.expect("su2_exceptional_in_M_star_star", "==", 0, "SU(2) slice at (p, q) = (0, pi/2)");
  }
}

struct HamSpanSample {
  bool star_star = false;
  int span = 0;
  bool remark_ok = true;
};

void reduced_ham_span(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const GroupContext ctx(cfg.n);
  const ToleranceConfig& tol = cfg.tolerances;
  const auto remark_holds = [&](const PhasePoint& x, int span) {
    return ctx.rank() - span <= psi_isotropy_dim(x, tol);
  };
  const auto res = over_samples<HamSpanSample>(cfg, rep.check_name, [&](Rng& rng) {
    const PhasePoint x = regular_point(ctx, rng, tol);
    HamSpanSample s;
    const StratumLabel label = classify(x, tol);
    s.star_star = label.in_M_star_star;
    s.span = reduced_hamiltonian_span(x, tol).dim;
    if (label.in_M_star) s.remark_ok = remark_holds(x, s.span);
    return s;
  });
  int lo = std::numeric_limits<int>::max(), hi = 0;
  long long outside = 0, remark_violations = 0;
  for (const auto& s : res) {
    lo = std::min(lo, s.span);
    hi = std::max(hi, s.span);
    outside += !s.star_star;
    remark_violations += !s.remark_ok;
  }
  if (cfg.n == 2) {
    const PhasePoint ex = slice_point({std::numbers::pi / 2.0, 0.0, 1.0});
    const int span = reduced_hamiltonian_span(ex, tol).dim;
    rep.observe_int("su2_exceptional_span", span);
    rep.expect("su2_exceptional_span", "==", 0, "Hamiltonian vectors project to zero there");
    remark_violations += !remark_holds(ex, span);
  }
  rep.observe_int("span_min", lo);
  rep.observe_int("span_max", hi);
  rep.observe_int("points_outside_M_star_star", outside);
  rep.observe_int("isotropy_bound_violations", remark_violations);
  rep.expect("span_min", "==", ctx.rank(), "r on M_**");
  rep.expect("span_max", "==", ctx.rank(), "r on M_**");
  rep.expect("points_outside_M_star_star", "==", 0, "random points lie in M_**");
  rep.expect("isotropy_bound_violations", "==", 0, "r - span <= dim isotropy of Psi(x)");
}

struct ConstSpanSample {
  int rank = 0;
  bool contains_hamiltonians = false;
};

void reduced_const_span(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const GroupContext ctx(cfg.n);
  const ToleranceConfig& tol = cfg.tolerances;
  const int max_len = cfg.effective_max_word_len();
  const auto gens = word_generators(max_len);
  const auto res = over_samples<ConstSpanSample>(cfg, rep.check_name, [&](Rng& rng) {
    const PhasePoint x = random_phase_point(ctx, rng);
    ConstSpanSample s;
    s.rank = reduced_constants_span(x, gens, tol).rank;
    RealMatrix ham(ctx.rank(), ctx.dim_M());
    for (int k = 2; k <= cfg.n; ++k) {
      ham.row(k - 2) = differential(InvariantHamiltonian(k).observable(), x).transpose();
    }
    const RealMatrix consts = invariant_differentials(x, gens);
    s.contains_hamiltonians =
        equilibrated_rank(vstack(consts, ham), tol.rank).rank == equilibrated_rank(consts, tol.rank).rank;
    return s;
  });
  int lo = std::numeric_limits<int>::max(), hi = 0;
  long long missing = 0;
  for (const auto& s : res) {
    lo = std::min(lo, s.rank);
    hi = std::max(hi, s.rank);
    missing += !s.contains_hamiltonians;
  }
  Rng rng = sample_rng(cfg, rep.check_name, 0);
  const PlateauSweep sweep = constants_span_sweep(random_phase_point(ctx, rng), max_len, tol);
  rep.details["sweep_max_len"] = sweep.max_len;
  rep.details["sweep_generators"] = sweep.generators;
  rep.details["sweep_rank"] = sweep.rank;

  const int expected = ctx.dim_g() - ctx.rank();
  rep.observe_int("rank_min", lo);
  rep.observe_int("rank_max", hi);
  rep.observe_int("generators", static_cast<long long>(gens.size()));
  rep.observe_int("plateau_len", sweep.plateau_len);
  rep.observe_int("plateau_rank", sweep.plateau_rank);
  rep.observe_int("hamiltonians_outside_span", missing);
  rep.observe_bool("rank_is_degenerate", rank_is_degenerate(ctx));
  rep.observe_bool("rank_is_liouville_boundary", rank_is_liouville_boundary(ctx));
  rep.expect("rank_min", "==", expected, "dim G - r");
  rep.expect("rank_max", "==", expected, "dim G - r");
  rep.expect("plateau_rank", "==", expected, "dim G - r");
  rep.expect("hamiltonians_outside_span", "==", 0, "Hamiltonians are constants of motion");
  if (cfg.n == 2) {
    rep.expect("rank_is_liouville_boundary", "==", 1, "r = (dim G - r) / 2 at n = 2");
    rep.expect("rank_is_degenerate", "==", 0, "r = (dim G - r) / 2 at n = 2");
  } else {
    rep.expect("rank_is_degenerate", "==", 1, "r < (dim G - r) / 2 for n >= 3");
  }
}

void centrality(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const GroupContext ctx(cfg.n);
  const auto gens = capped_generators(cfg.effective_max_word_len(), kCentralityWordLen);
  const auto res = over_samples<double>(cfg, rep.check_name, [&](Rng& rng) {
    const PhasePoint x = random_phase_point(ctx, rng);
    double worst = 0;
    for (int k = 2; k <= cfg.n; ++k) {
      for (const auto& p : gens) worst = std::max(worst, centrality_check(x, k, p));
    }
    return worst;
  });
  double worst = 0;
  for (double d : res) worst = std::max(worst, d);
  rep.observe("bracket_max", worst);
  rep.observe_int("generators", static_cast<long long>(gens.size()));
  rep.expect("bracket_max", "<=", kCentralityBound, "Hamiltonians central among constants");
}

struct LeafSample {
  int span = 0;
  bool admissible = false;
};

void leaf_codim(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const GroupContext ctx(cfg.n);
  const ToleranceConfig& tol = cfg.tolerances;
  const auto res = over_samples<LeafSample>(cfg, rep.check_name, [&](Rng& rng) {
    const PhasePoint x = random_phase_point(ctx, rng);
    const StratumLabel label = classify(x, tol);
    return LeafSample{leaf_codim_check(x, tol).dim, label.regular_moment && label.in_M_star};
  });
  int lo = std::numeric_limits<int>::max(), hi = 0;
  long long skipped = 0;
  for (const auto& s : res) {
    lo = std::min(lo, s.span);
    hi = std::max(hi, s.span);
    skipped += !s.admissible;
  }
  Rng rng = sample_rng(cfg, rep.check_name, -1);
  const PhasePoint flat{GroupElement::identity(cfg.n), random_algebra(ctx, rng)};
  rep.observe_int("codim_min", lo);
  rep.observe_int("codim_max", hi);
  rep.observe_int("non_regular_moment_points", skipped);
  rep.observe_int("codim_at_zero_moment", leaf_codim_check(flat, tol).dim);
  rep.expect("codim_min", "==", ctx.rank(), "leaves of codimension r");
  rep.expect("codim_max", "==", ctx.rank(), "leaves of codimension r");
  rep.expect("non_regular_moment_points", "==", 0, "random moment values are regular");
  rep.expect("codim_at_zero_moment", "==", 0, "homogeneous Casimirs vanish to second order at 0");
}

struct DoubleSpanSample {
  int rank = 0;
  int expected = 0;
};

void invariant_span_double_check(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const GroupContext ctx(cfg.n);
  const ToleranceConfig& tol = cfg.tolerances;
  const auto gens = word_generators(cfg.effective_max_word_len());
  const auto res = over_samples<DoubleSpanSample>(cfg, rep.check_name, [&](Rng& rng) {
    const DoublePoint z{random_algebra(ctx, rng), random_algebra(ctx, rng)};
    return DoubleSpanSample{invariant_span_double(z, gens, tol).rank, orbit_codimension_double(z, tol)};
  });
  long long mismatches = 0;
  int lo = std::numeric_limits<int>::max(), hi = 0;
  for (const auto& s : res) {
    mismatches += s.rank != s.expected;
    lo = std::min(lo, s.rank);
    hi = std::max(hi, s.rank);
  }
  rep.observe_int("generic_rank_min", lo);
  rep.observe_int("generic_rank_max", hi);
  rep.observe_int("generic_mismatches", mismatches);
  rep.expect("generic_rank_min", "==", ctx.dim_g(), "codimension of a free orbit");
  rep.expect("generic_rank_max", "==", ctx.dim_g(), "codimension of a free orbit");
  rep.expect("generic_mismatches", "==", 0, "span equals orbit codimension");

  Rng rng = sample_rng(cfg, rep.check_name, -1);
  AlgebraElement x = random_algebra(ctx, rng);
  while (!is_regular(x, tol)) x = random_algebra(ctx, rng);
  const DoublePoint diag{x, x};
  const RankResult dr = invariant_span_double(diag, gens, tol);
  rep.observe_int("diagonal_rank", dr.rank);
  rep.observe_int("diagonal_orbit_codim", orbit_codimension_double(diag, tol));
  rep.details["diagonal_singular_values"] = to_json(dr.singular_values);
  rep.expect("diagonal_rank", "==", 2 * ctx.dim_g() - (ctx.dim_g() - ctx.rank()),
             "2 dim g - orbit dim at (X, X)");

  const DoublePoint origin{AlgebraElement::zero(cfg.n), AlgebraElement::zero(cfg.n)};
  rep.observe_int("origin_rank", invariant_span_double(origin, gens, tol).rank);
  rep.expect("origin_rank", "==", 0, "homogeneous generators");
}

void apposition_check(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const ToleranceConfig& tol = cfg.tolerances;
  const FrameAudit a = audit_frame(build_frame(cfg.n, tol), tol);
  rep.observe("lambda_unitarity", a.lambda_unitarity);
  rep.observe("lambda_det_defect", a.lambda_det_defect);
  rep.observe("lambda_min_eigen_gap", a.lambda_min_eigen_gap);
  rep.observe_bool("lambda_regular", a.lambda_regular);
  rep.observe("max_cross_inner", a.max_cross_inner);
  rep.observe("gram_defect", a.gram_defect);
  rep.observe_int("stacked_rank", a.stacked_rank);
  rep.expect("lambda_unitarity", "<=", tol.structural, "Lambda in SU(n)");
  rep.expect("lambda_det_defect", "<=", tol.structural, "Lambda in SU(n)");
  rep.expect("lambda_regular", "==", 1, "Lambda regular");
  rep.expect("max_cross_inner", "<=", 1e-12, "t orthogonal to t'");
  rep.expect("gram_defect", "<=", 1e-12, "orthonormal bases");
  rep.expect("stacked_rank", "==", 2 * (cfg.n - 1), "t and t' meet in 0");
}

struct MomentSample {
  double residual = 0.0;
  int isotropy = 0;
  double coset_residual = 0.0;
};

void moment_equation(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const GroupContext ctx(cfg.n);
  const ToleranceConfig& tol = cfg.tolerances;
  const AppositionFrame frame = build_frame(cfg.n, tol);
  const auto res = over_samples<MomentSample>(cfg, rep.check_name, [&](Rng& rng) {
    GroupElement g = random_torus_element(ctx, rng);
    while (!is_regular_torus_element(g, tol)) g = random_torus_element(ctx, rng);
    const AlgebraElement zeta = random_tprime(frame, rng);
    const MomentSolution sol = solve_moment_equation(g, zeta, tol);
    MomentSample s;
    s.residual = sol.residual;
    const std::vector<IsotropyItem> items{g, sol.J};
    s.isotropy = joint_centralizer_dim(items, tol);
    // any torus shift solves the same equation
    AlgebraElement u = AlgebraElement::zero(cfg.n);
    for (const auto& t : frame.t_basis) u = u + t * rng.normal();
    s.coset_residual = std::abs(moment_equation_residual(g, sol.J + u, zeta) - sol.residual);
    return s;
  });
  double residual = 0, coset = 0;
  int iso = 0;
  for (const auto& s : res) {
    residual = std::max(residual, s.residual);
    coset = std::max(coset, s.coset_residual);
    iso = std::max(iso, s.isotropy);
  }
  rep.observe("residual_max", residual);
  rep.observe_int("joint_isotropy_max", iso);
  rep.observe("torus_shift_residual_change_max", coset);
  rep.expect("residual_max", "<=", kMomentResidual, "solvable for zeta in t'");
  rep.expect("joint_isotropy_max", "==", 0, "isotropy of (g, J) is the center");
  rep.expect("torus_shift_residual_change_max", "<=", 1e-12, "solutions form a t-coset");
}

SliceCoords random_slice_coords(Rng& rng) {
  const SliceGrid grid = SliceGrid::defaults();
  const double q = grid.q.front() + (grid.q.back() - grid.q.front()) * rng.uniform();
  const double p = -3.0 + 6.0 * rng.uniform();
  const double x = 0.5 + 7.5 * rng.uniform();
  return {q, p, x};
}

void su2_energy(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const SliceGrid grid = SliceGrid::defaults();
  double worst = 0;
  for (double x : grid.x) {
    for (double q : grid.q) {
      for (double p : grid.p) {
        const SliceCoords c{q, p, x};
        const Matrix j = slice_point(c).J.matrix();
        const double casimir = -0.25 * (j * j).trace().real();
        worst = std::max(worst, std::abs(casimir - sutherland_energy(c)));
      }
    }
  }
  rep.observe("energy_identity_max", worst);
  rep.observe_int("grid_points", static_cast<long long>(grid.q.size() * grid.p.size() * grid.x.size()));

  Rng rng = sample_rng(cfg, rep.check_name, 0);
  double moment = 0, moment_conj = 0, jtilde = 0, antiherm = 0;
  for (int i = 0; i < 20; ++i) {
    const SliceCoords c = random_slice_coords(rng);
    const PhasePoint pt = slice_point(c);
    antiherm = std::max(antiherm, anti_hermitian_residual(pt.J.matrix()));
    const Matrix phi = moment_map(pt).matrix();
    moment = std::max(moment, (phi - slice_moment_value(c)).norm());
    // the same value after conjugation by diag(e^{-iq}, e^{iq})
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = std::exp(cplx(0.0, -c.q));
    d(1, 1) = std::exp(cplx(0.0, c.q));
    moment_conj = std::max(moment_conj, (phi - d * slice_moment_value(c) * d.adjoint()).norm());
    jtilde = std::max(jtilde, (psi(pt).X.matrix() - slice_j_tilde(c)).norm());
  }
  rep.observe("moment_value_max", moment);
  rep.observe("moment_value_torus_conjugate_max", moment_conj);
  rep.observe("j_tilde_max", jtilde);
  rep.observe("anti_hermitian_max", antiherm);
  rep.expect("energy_identity_max", "<=", kSlicePrintedBound, "-tr(J^2)/4 on the slice");
  rep.expect("moment_value_max", "<=", kSlicePrintedBound, "moment value ix(E12 + E21)");
  rep.expect("moment_value_torus_conjugate_max", "<=", kSlicePrintedBound,
             "moment value on the orbit of ix(E12 + E21)");
  rep.expect("j_tilde_max", "<=", kSlicePrintedBound, "closed form of g^{-1} J g");
  rep.expect("anti_hermitian_max", "<=", cfg.tolerances.structural, "J in su(2)");
}

void su2_exceptional(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const ToleranceConfig& tol = cfg.tolerances;
  int iso_lo = std::numeric_limits<int>::max(), iso_hi = 0, span_hi = 0;
  long long not_min = 0;
  double energy_defect = 0;
  for (double x : SliceGrid::defaults().x) {
    const ExceptionalAudit a = exceptional_point_audit(x, tol);
    iso_lo = std::min(iso_lo, a.joint_isotropy_dim);
    iso_hi = std::max(iso_hi, a.joint_isotropy_dim);
    span_hi = std::max(span_hi, a.reduced_span);
    not_min += !a.is_grid_minimum;
    energy_defect = std::max(energy_defect, std::abs(a.energy - x * x / 8.0));
  }
  const auto off = over_samples<int>(cfg, rep.check_name, [&](Rng& rng) {
    SliceCoords c = random_slice_coords(rng);
    const std::vector<IsotropyItem> items{psi(slice_point(c)).X, slice_point(c).J};
    return joint_centralizer_dim(items, tol);
  });
  int off_hi = 0;
  for (int d : off) off_hi = std::max(off_hi, d);

  rep.observe_int("exceptional_isotropy_min", iso_lo);
  rep.observe_int("exceptional_isotropy_max", iso_hi);
  rep.observe_int("exceptional_span_max", span_hi);
  rep.observe_int("not_grid_minimum", not_min);
  rep.observe("energy_defect_max", energy_defect);
  rep.observe_int("off_point_isotropy_max", off_hi);
  rep.expect("exceptional_isotropy_min", "==", 1, "isotropy of (J~, J) at (0, pi/2)");
  rep.expect("exceptional_isotropy_max", "==", 1, "isotropy of (J~, J) at (0, pi/2)");
  rep.expect("exceptional_span_max", "==", 0, "Hamiltonian vectors project to zero");
  rep.expect("not_grid_minimum", "==", 0, "global minimum of the reduced energy");
  rep.expect("energy_defect_max", "<=", kSlicePrintedBound, "x^2 / 8");
  rep.expect("off_point_isotropy_max", "==", 0, "center only away from (0, pi/2)");
}

double dynamics_horizon(const ExperimentConfig& cfg) { return std::min(cfg.t_max, 2.0); }

const SliceCoords kDynamicsStart{std::numbers::pi / 3.0, 0.0, 1.0};

void su2_dynamics(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const ToleranceConfig& tol = cfg.tolerances;
  const double horizon = dynamics_horizon(cfg);
  const DynamicsMatch m = reduced_dynamics_match(kDynamicsStart, horizon, kDynamicsSteps, tol);
  const DynamicsMatch eq =
      reduced_dynamics_match({std::numbers::pi / 2.0, 0.0, 1.0}, horizon, 1000, tol);
  rep.observe("horizon", horizon);
  rep.observe_int("steps", kDynamicsSteps);
  rep.observe("max_deviation", m.max_deviation);
  rep.observe("time_scale", m.time_scale);
  rep.observe_bool("domain_exit", m.domain_exit);
  rep.observe("oracle_energy_drift", m.oracle_energy_drift);
  rep.observe("equilibrium_deviation", eq.max_deviation);
  rep.expect("max_deviation", "<=", kDynamicsBound, "Sutherland equations with RK4 oracle");
  rep.expect("domain_exit", "==", 0, "trajectory stays on the slice");
  rep.expect("oracle_energy_drift", "<=", kOracleDriftBound, "oracle conserves energy");
  rep.expect("equilibrium_deviation", "<=", kEquilibriumBound, "minimum is an equilibrium");
}

using CheckBody = void (*)(const ExperimentConfig&, ExperimentReport&);

const std::vector<std::pair<std::string, CheckBody>>& registry() {
  static const std::vector<std::pair<std::string, CheckBody>> r = {
      {"bracket-axioms", bracket_axioms},
      {"psi-poisson", psi_poisson},
      {"flow-conservation", flow_conservation},
      {"dpsi-rank", dpsi_rank_check},
      {"strata-census", strata_census},
      {"reduced-ham-span", reduced_ham_span},
      {"reduced-const-span", reduced_const_span},
      {"centrality", centrality},
      {"leaf-codim", leaf_codim},
      {"invariant-span-double", invariant_span_double_check},
      {"apposition", apposition_check},
      {"moment-equation", moment_equation},
      {"su2-energy", su2_energy},
      {"su2-exceptional", su2_exceptional},
      {"su2-dynamics", su2_dynamics},
  };
  return r;
}

CheckBody find_check(const std::string& name) {
  for (const auto& [n, body] : registry()) {
    if (n == name) return body;
  }
  throw UsageError("unknown check '" + name + "'");
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& entry : registry()) v.push_back(entry.first);
    return v;
  }();
  return names;
}

ExperimentReport run_check(const std::string& name, const ExperimentConfig& cfg) {
  const CheckBody body = find_check(name);
  cfg.validate();
  ExperimentReport rep;
  rep.check_name = name;
  rep.n = cfg.n;
  rep.seed = cfg.seed;
  rep.samples = cfg.samples;
  const auto start = std::chrono::steady_clock::now();
  body(cfg, rep);
  rep.evaluate();
  rep.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return rep;
}

std::vector<ExperimentReport> run_all(const ExperimentConfig& cfg) {
  std::vector<ExperimentReport> out;
  for (int n : {2, 3}) {
    ExperimentConfig c = cfg;
    c.n = n;
    for (const auto& name : check_names()) out.push_back(run_check(name, c));
  }
  return out;
}

std::string emit_plot_data(const std::string& check, const ExperimentConfig& cfg) {
  find_check(check);
  cfg.validate();
  if (check == "su2-dynamics") {
    return trajectory_csv(
        reduced_dynamics_match(kDynamicsStart, dynamics_horizon(cfg), kDynamicsSteps, cfg.tolerances));
  }
  if (check == "reduced-const-span") {
    const GroupContext ctx(cfg.n);
    Rng rng = sample_rng(cfg, check, 0);
    const PlateauSweep s =
        constants_span_sweep(random_phase_point(ctx, rng), cfg.effective_max_word_len(), cfg.tolerances);
    std::string out = "max_word_len,generators,rank\n";
    for (std::size_t i = 0; i < s.max_len.size(); ++i) {
      out += std::to_string(s.max_len[i]) + "," + std::to_string(s.generators[i]) + "," +
             std::to_string(s.rank[i]) + "\n";
    }
    return out;
  }
  throw UsageError("no plot data for check '" + check + "'");
}

}  // namespace redint
