#pragma once

// SU(2) reduction to the two-particle trigonometric Sutherland model:
// the gauge slice g = diag(e^{iq}, e^{-iq}),
//   J = ip (E11 - E22) + ix (E12 / (e^{2iq} - 1) + E21 / (e^{-2iq} - 1)),
// on which the moment map takes the value ix (E12 + E21).

#include <string>
#include <vector>

#include "redint/reduction_lab.hpp"

namespace redint {

struct SliceCoords {
  double q = 0.0;  // angle in (0, pi)
  double p = 0.0;
  double x = 1.0;  // orbit parameter, > 0

  /// Throws DomainError outside 0 < q < pi, x > 0.
  void validate() const;
};

PhasePoint slice_point(const SliceCoords& c);

/// ix (E12 + E21).
Matrix slice_moment_value(const SliceCoords& c);

/// ip (E11 - E22) + ix (e^{-2iq} / (e^{2iq} - 1) E12 + e^{2iq} / (e^{-2iq} - 1) E21).
Matrix slice_j_tilde(const SliceCoords& c);

/// p^2 / 2 + x^2 / (8 sin^2 q).
double sutherland_energy(const SliceCoords& c);

/// dq/dt = p, dp/dt = x^2 cos q / (4 sin^3 q).
struct SutherlandField {
  double x = 1.0;
  double force(double q) const;
};

struct SliceGrid {
  std::vector<double> q;  // k pi / 40, k = 1..39
  std::vector<double> p;  // 21 values in [-3, 3]
  std::vector<double> x;  // 0.5, 1, 2, 4, 8

  static SliceGrid defaults();
};

struct ExceptionalAudit {
  int joint_isotropy_dim = -1;  // of (J~, J) at (q, p) = (pi/2, 0)
  int reduced_span = -1;        // Hamiltonian span modulo gauge there
  double energy = 0.0;          // sutherland_energy at the point
  double grid_min_energy = 0.0; // minimum over the default (q, p) grid
  bool is_grid_minimum = false;
};

ExceptionalAudit exceptional_point_audit(double x_val, const ToleranceConfig& tol);

/// Conjugates y onto the slice and returns its coordinates. Throws GaugeError
/// when g is central, the moment value vanishes, or the conjugated point
/// misses the slice by more than 1e-8.
SliceCoords regauge_to_slice(const PhasePoint& y, const ToleranceConfig& tol);

struct TrajectorySample {
  double t = 0.0;
  double q = 0.0;
  double p = 0.0;
  double q_oracle = 0.0;
  double p_oracle = 0.0;
  double energy = 0.0;  // of the oracle state
  double deviation = 0.0;
};

struct DynamicsMatch {
  double max_deviation = 0.0;
  double time_scale = 0.0;     // Sutherland time per unit of C_2 flow time
  bool calibrated_on_aux_point = false;
  bool domain_exit = false;
  double exit_time = 0.0;
  double oracle_energy_drift = 0.0;
  std::vector<TrajectorySample> samples;

  bool passes(double tol) const { return !domain_exit && max_deviation <= tol; }
};

/// Runs the exact C_2 flow from slice_point(c0), regauges every step onto the
/// slice and compares with an RK4 integration of the Sutherland equations over
/// the same interval, with time rescaled by the factor calibrated at t = 0.
DynamicsMatch reduced_dynamics_match(const SliceCoords& c0, double t_end, int steps,
                                     const ToleranceConfig& tol);

/// Header `t,q,p,q_oracle,p_oracle,energy,deviation`, one row per sample.
std::string trajectory_csv(const DynamicsMatch& m);

}  // namespace redint
