#include "nonnoether/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace nonnoether {

Trajectory integrate(const HamiltonianSystem& sys, const PhasePoint& x0, const TrajectoryConfig& cfg) {
  if (!(cfg.dt > 0.0) && !(cfg.dt < 0.0)) throw std::invalid_argument("dt must be nonzero");
  if (cfg.steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (cfg.stride < 1) throw std::invalid_argument("stride must be >= 1");
  if (x0.dim() != sys.dim()) throw DegreeError("initial point has wrong dimension");

  const VectorField xh = hamiltonian_field(sys, sys.hamiltonian(), cfg.fd);
  const int dim = sys.dim();
  const double dt = cfg.dt;

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.points.push_back(x0);
  if (!sys.domain().contains(x0)) traj.domain_exit_step = 0;

  Vector x = x0.coords();
  for (long step = 1; step <= cfg.steps; ++step) {
    const PhasePoint here(x);
    Vector y = x + dt * xh(here);
    const Matrix m = Matrix::Identity(dim, dim) - 0.5 * dt * jacobian(xh, here, cfg.fd);
    Eigen::FullPivLU<Matrix> lu(m);
    const bool use_newton = lu.isInvertible();

    bool converged = false;
    for (int it = 0; it < cfg.newton_max_iters; ++it) {
      const Vector residual = y - x - dt * xh(PhasePoint(Vector(0.5 * (x + y))));
      const Vector delta = use_newton ? Vector(lu.solve(residual)) : residual;
      y -= delta;
      if (!y.allFinite()) throw IntegrationError("implicit midpoint iteration diverged", step);
      if (delta.cwiseAbs().maxCoeff() <= cfg.newton_tol * std::max(1.0, y.cwiseAbs().maxCoeff())) {
        converged = true;
        break;
      }
    }
    if (!converged) throw IntegrationError("implicit midpoint iteration did not converge", step);
    x = y;

    const PhasePoint next(x);
    if (!traj.domain_exit_step && !sys.domain().contains(next)) traj.domain_exit_step = step;
    if (step % cfg.stride == 0 || step == cfg.steps) {
      traj.times.push_back(static_cast<double>(step) * dt);
      traj.points.push_back(next);
    }
  }
  return traj;
}

const InvariantDrift& DriftReport::at(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return e;
  }
  throw std::out_of_range("no drift entry named " + name);
}

DriftReport drift_report(const HamiltonianSystem& sys, const Trajectory& traj,
                         std::span<const NamedInvariant> invariants, long stride) {
  if (traj.points.empty()) throw std::invalid_argument("empty trajectory");
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");

  std::vector<NamedInvariant> all;
  all.push_back({"energy", sys.hamiltonian()});
  all.insert(all.end(), invariants.begin(), invariants.end());

  DriftReport report;
  for (const auto& inv : all) {
    InvariantDrift d;
    d.name = inv.name;
    try {
      d.initial = inv.field(traj.points.front());
      for (std::size_t i = 0; i < traj.points.size(); i += static_cast<std::size_t>(stride)) {
        const double v = inv.field(traj.points[i]);
        if (!std::isfinite(v)) throw NumericalDomainError("non-finite invariant value");
        const double diff = std::abs(v - d.initial);
        if (diff > d.max_abs_drift) {
          d.max_abs_drift = diff;
          d.time_of_max = traj.times[i];
        }
      }
      d.max_rel_drift = d.initial != 0.0 ? d.max_abs_drift / std::abs(d.initial) : d.max_abs_drift;
    } catch (const std::exception& e) {
      d.error = e.what();
    }
    report.entries.push_back(std::move(d));
  }
  return report;
}

double pointwise_conservation(const HamiltonianSystem& sys, const ScalarField& f, std::span<const PhasePoint> points,
                              FiniteDifference fd) {
  double worst = 0.0;
  for (const PhasePoint& x : points) {
    worst = std::max(worst, std::abs(poisson_bracket(sys, f, sys.hamiltonian(), x, fd)));
  }
  return worst;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, std::span<const std::string> coordinate_names,
                          std::span<const NamedInvariant> invariants) {
  out << "t";
  for (const auto& c : coordinate_names) out << ',' << c;
  for (const auto& inv : invariants) out << ',' << inv.name;
  out << '\n';
  for (std::size_t i = 0; i < traj.points.size(); ++i) {
    out << format_double(traj.times[i]);
    const PhasePoint& x = traj.points[i];
    for (int j = 0; j < x.dim(); ++j) out << ',' << format_double(x[j]);
    for (const auto& inv : invariants) {
      double v;
      try {
        v = inv.field(x);
      } catch (const std::exception&) {
        v = std::nan("");
      }
      out << ',' << format_double(v);
    }
    out << '\n';
  }
}

}  // namespace nonnoether
