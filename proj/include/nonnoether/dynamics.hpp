#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nonnoether/hamiltonian.hpp"

namespace nonnoether {

struct TrajectoryConfig {
  double dt = 1e-3;
  long steps = 1000;
  double newton_tol = 1e-12;
  int newton_max_iters = 50;
  /// Every stride-th step is stored (the first and last are always stored).
  long stride = 10;
  FiniteDifference fd{};
};

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> points;
  /// First step at which the path left the domain box (DomainExitWarning).
  std::optional<long> domain_exit_step;
};

/// Implicit midpoint rule x_{m+1} = x_m + dt X_h((x_m + x_{m+1}) / 2), each
/// step solved by Newton iteration with a finite-difference Jacobian. Step m
/// produces x_m, so IntegrationError and domain_exit_step count from 1.
/// Symplectic for constant omega, second order always.
Trajectory integrate(const HamiltonianSystem& sys, const PhasePoint& x0, const TrajectoryConfig& cfg);

struct NamedInvariant {
  std::string name;
  ScalarField field;
};

struct InvariantDrift {
  std::string name;
  double initial = 0.0;
  double max_abs_drift = 0.0;
  /// max |f - f0| / |f0|; equals the absolute drift when f0 == 0.
  double max_rel_drift = 0.0;
  double time_of_max = 0.0;
  std::optional<std::string> error;
};

struct DriftReport {
  std::vector<InvariantDrift> entries;  ///< "energy" first, then the requested invariants

  const InvariantDrift& at(const std::string& name) const;
};

/// Evaluates each invariant at every stride-th stored point. Energy is always
/// included. A failing invariant gets an error entry; the rest still report.
DriftReport drift_report(const HamiltonianSystem& sys, const Trajectory& traj,
                         std::span<const NamedInvariant> invariants, long stride = 1);

/// Integrator-free conservation check: max over points of |{f, h}|.
double pointwise_conservation(const HamiltonianSystem& sys, const ScalarField& f,
                              std::span<const PhasePoint> points, FiniteDifference fd = {});

/// Trajectory plus invariant columns as CSV: t, coordinates..., invariants...
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, std::span<const std::string> coordinate_names,
                          std::span<const NamedInvariant> invariants);

}  // namespace nonnoether
