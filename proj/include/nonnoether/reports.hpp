#pragma once

// Machine-readable reports behind the CLI subcommands. Every report has the
// top-level keys system, gates, invariants, drift, meta (plus "pass").

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "nonnoether/dynamics.hpp"
#include "nonnoether/engine.hpp"
#include "nonnoether/system_spec.hpp"
#include "nonnoether/tolerances.hpp"

namespace nonnoether {

inline constexpr const char* kVersion = "0.1.0";

struct CheckOptions {
  int points = 20;
  std::uint64_t seed = 1;
  Tolerances tol{};
  int lenard_count = 4;      ///< residuals for k = 1..lenard_count-1
  int involution_count = 3;  ///< nu_1..nu_count
};

struct Report {
  nlohmann::ordered_json json;
  bool pass = true;
};

/// Seeded uniform points in the system's domain box.
std::vector<PhasePoint> sample_points(const HamiltonianSystem& sys, int count, std::uint64_t seed);

nlohmann::ordered_json system_json(const LoadedSystem& loaded);
nlohmann::ordered_json bundle_json(const InvariantBundle& bundle);

/// All structural gates: Liouville, symmetry, spectrum, conservation,
/// cross-formula, torsion, Lenard, involution.
Report check_report(const LoadedSystem& loaded, const CheckOptions& opts);

/// InvariantBundle at the given points.
Report invariants_report(const LoadedSystem& loaded, const std::vector<PhasePoint>& points,
                         const CheckOptions& opts);

struct IntegrateOptions {
  TrajectoryConfig cfg{};
  std::optional<PhasePoint> x0;
  std::uint64_t seed = 1;
  Tolerances tol{};
};

struct IntegrateRun {
  Report report;
  Trajectory trajectory;
  std::vector<NamedInvariant> columns;  ///< h, l_k, mu_k, lambda_k as available
};

IntegrateRun integrate_report(const LoadedSystem& loaded, const IntegrateOptions& opts);

}  // namespace nonnoether
