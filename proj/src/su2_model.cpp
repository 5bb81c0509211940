#include "redint/su2_model.hpp"

#include <cmath>
#include <limits>
#include <cstdio>
#include <numbers>
#include <utility>

namespace redint {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kSliceMatchBound = 1e-8;

double slice_distance(const PhasePoint& a, const PhasePoint& b) {
  return std::max((a.g.matrix() - b.g.matrix()).norm(), (a.J.matrix() - b.J.matrix()).norm());
}

struct SliceState {
  double q;
  double p;
};

}  // namespace

void SliceCoords::validate() const {
  if (!(q > 0.0 && q < std::numbers::pi)) throw DomainError("slice coordinate q must lie in (0, pi)");
  if (!(x > 0.0)) throw DomainError("slice coordinate x must be positive");
  if (!std::isfinite(p)) throw DomainError("slice coordinate p must be finite");
}

PhasePoint slice_point(const SliceCoords& c) {
  c.validate();
  Matrix g = Matrix::Zero(2, 2);
  g(0, 0) = std::exp(kI * c.q);
  g(1, 1) = std::exp(-kI * c.q);
  Matrix j = Matrix::Zero(2, 2);
  j(0, 0) = kI * c.p;
  j(1, 1) = -kI * c.p;
  j(0, 1) = kI * c.x / (std::exp(2.0 * kI * c.q) - 1.0);
  j(1, 0) = kI * c.x / (std::exp(-2.0 * kI * c.q) - 1.0);
  return PhasePoint{GroupElement::unchecked(std::move(g)), AlgebraElement::unchecked(std::move(j))};
}

Matrix slice_moment_value(const SliceCoords& c) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = kI * c.x;
  m(1, 0) = kI * c.x;
  return m;
}

Matrix slice_j_tilde(const SliceCoords& c) {
  const cplx e2 = std::exp(2.0 * kI * c.q);
  const cplx em2 = std::exp(-2.0 * kI * c.q);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = kI * c.p;
  m(1, 1) = -kI * c.p;
  m(0, 1) = kI * c.x * em2 / (e2 - 1.0);
  m(1, 0) = kI * c.x * e2 / (em2 - 1.0);
  return m;
}

double sutherland_energy(const SliceCoords& c) {
  const double s = std::sin(c.q);
  return 0.5 * c.p * c.p + c.x * c.x / (8.0 * s * s);
}

double SutherlandField::force(double q) const {
  const double s = std::sin(q);
  return x * x * std::cos(q) / (4.0 * s * s * s);
}

SliceGrid SliceGrid::defaults() {
  SliceGrid grid;
  for (int k = 1; k <= 39; ++k) grid.q.push_back(k * std::numbers::pi / 40.0);
  for (int k = 0; k <= 20; ++k) grid.p.push_back(-3.0 + 0.3 * k);
  grid.x = {0.5, 1.0, 2.0, 4.0, 8.0};
  return grid;
}

ExceptionalAudit exceptional_point_audit(double x_val, const ToleranceConfig& tol) {
  if (!(x_val > 0.0)) throw DomainError("exceptional_point_audit: x must be positive");
  const SliceCoords c{std::numbers::pi / 2.0, 0.0, x_val};
  const PhasePoint pt = slice_point(c);

  ExceptionalAudit audit;
  audit.joint_isotropy_dim = psi_isotropy_dim(pt, tol);
  audit.reduced_span = reduced_hamiltonian_span(pt, tol).dim;
  audit.energy = sutherland_energy(c);

  const SliceGrid grid = SliceGrid::defaults();
  audit.grid_min_energy = std::numeric_limits<double>::infinity();
  for (double q : grid.q) {
    for (double p : grid.p) {
      audit.grid_min_energy = std::min(audit.grid_min_energy, sutherland_energy({q, p, x_val}));
    }
  }
  audit.is_grid_minimum = audit.energy <= audit.grid_min_energy;
  return audit;
}

SliceCoords regauge_to_slice(const PhasePoint& y, const ToleranceConfig& tol) {
  if (y.size() != 2) throw DimensionError("regauge_to_slice: SU(2) only");
  const Matrix& g = y.g.matrix();

  // (g - g^dagger) / 2i has eigenvalues -sin q, sin q with the eigenvectors of
  // e^{-iq}, e^{iq}; the ascending order puts e^{iq} second.
  const Matrix s = (g - g.adjoint()) / (2.0 * kI);
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  if (!(es.eigenvalues()(1) > tol.eigen_gap)) {
    throw GaugeError("regauge_to_slice: g is central, no slice representative");
  }
  Matrix u(2, 2);
  u.col(0) = es.eigenvectors().col(1);
  u.col(1) = es.eigenvectors().col(0);
  const cplx det = u.determinant();
  u.col(0) *= std::conj(det) / std::abs(det);

  const Matrix gd = u.adjoint() * g * u;
  const Matrix jd = u.adjoint() * y.J.matrix() * u;
  const double q = std::arg(gd(0, 0));

  const cplx w = jd(0, 1) * (std::exp(2.0 * kI * q) - 1.0) / kI;
  const double xv = std::abs(w);
  if (!(xv > tol.eigen_gap)) {
    throw GaugeError("regauge_to_slice: moment map value is not regular");
  }
  // Residual torus: diag(e^{i phi}, e^{-i phi}) multiplies J_12 by e^{2i phi}.
  const double phi = -0.5 * std::arg(w);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = std::exp(kI * phi);
  d(1, 1) = std::exp(-kI * phi);
  const Matrix eta = d * u.adjoint();
  const Matrix jfinal = eta * y.J.matrix() * eta.adjoint();

  SliceCoords c{q, jfinal(0, 0).imag(), xv};
  if (!(q > 0.0 && q < std::numbers::pi)) throw GaugeError("regauge_to_slice: q left (0, pi)");

  const PhasePoint moved = act(GroupElement::unchecked(eta), y);
  const double miss = slice_distance(moved, slice_point(c));
  if (!(miss <= kSliceMatchBound * std::max(1.0, y.J.norm()))) {
    throw GaugeError("regauge_to_slice: conjugated point misses the slice by " +
                     std::to_string(miss));
  }
  return c;
}

DynamicsMatch reduced_dynamics_match(const SliceCoords& c0, double t_end, int steps,
                                     const ToleranceConfig& tol) {
  c0.validate();
  if (!(t_end > 0.0) || steps < 1) throw PreconditionError("reduced_dynamics_match: bad horizon");
  const InvariantHamiltonian c2(2);
  const SutherlandField field{c0.x};

  DynamicsMatch out;

  // Time calibration: compare the initial (q, p) velocity of the regauged
  // unreduced flow with the Sutherland vector field.
  const auto calibrate = [&](const SliceCoords& c) {
    const PhasePoint start = slice_point(c);
    const double h = 1e-3;
    const double dq = five_point_difference(
        [&](double t) { return regauge_to_slice(flow(start, c2, t), tol).q; }, h);
    const double dp = five_point_difference(
        [&](double t) { return regauge_to_slice(flow(start, c2, t), tol).p; }, h);
    const double vq = c.p;
    const double vp = field.force(c.q);
    return std::pair{(dq * vq + dp * vp) / (vq * vq + vp * vp), std::hypot(vq, vp)};
  };
  auto [scale, speed] = calibrate(c0);
  if (!(speed > 1e-8)) {
    out.calibrated_on_aux_point = true;
    scale = calibrate(SliceCoords{c0.q, 1.0, c0.x}).first;
  }
  out.time_scale = scale;

  const auto rhs = [&](const SliceState& s) {
    return SliceState{scale * s.p, scale * field.force(s.q)};
  };
  const PhasePoint start = slice_point(c0);
  const double dt = t_end / steps;
  SliceState oracle{c0.q, c0.p};
  const double e0 = sutherland_energy(c0);

  for (int k = 0; k <= steps; ++k) {
    const double t = k * dt;
    if (k > 0) {
      const SliceState k1 = rhs(oracle);
      const SliceState k2 = rhs({oracle.q + 0.5 * dt * k1.q, oracle.p + 0.5 * dt * k1.p});
      const SliceState k3 = rhs({oracle.q + 0.5 * dt * k2.q, oracle.p + 0.5 * dt * k2.p});
      const SliceState k4 = rhs({oracle.q + dt * k3.q, oracle.p + dt * k3.p});
      oracle.q += dt / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
      oracle.p += dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
    }
    SliceCoords c;
    try {
      c = regauge_to_slice(flow(start, c2, t), tol);
    } catch (const GaugeError&) {
      out.domain_exit = true;
      out.exit_time = t;
      break;
    }
    TrajectorySample s;
    s.t = t;
    s.q = c.q;
    s.p = c.p;
    s.q_oracle = oracle.q;
    s.p_oracle = oracle.p;
    s.energy = sutherland_energy({oracle.q, oracle.p, c0.x});
    s.deviation = std::max(std::abs(c.q - oracle.q), std::abs(c.p - oracle.p));
    out.max_deviation = std::max(out.max_deviation, s.deviation);
    out.oracle_energy_drift = std::max(out.oracle_energy_drift, std::abs(s.energy - e0));
    out.samples.push_back(s);
  }
  return out;
}

std::string trajectory_csv(const DynamicsMatch& m) {
  std::string out = "t,q,p,q_oracle,p_oracle,energy,deviation\n";
  char buf[256];
  for (const auto& s : m.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.q, s.p,
                  s.q_oracle, s.p_oracle, s.energy, s.deviation);
    out += buf;
  }
  return out;
}

}  // namespace redint
