#pragma once

#include <json.hpp>

namespace nonnoether {

/// Every acceptance threshold in one place. scaled() multiplies the upper
/// bounds; the lower bounds (witness, negative control) stay fixed.
struct Tolerances {
  double liouville = 1e-6;
  double symmetry = 1e-7;
  double witness_min = 0.1;
  double negative_control_min = 0.1;
  double conservation = 1e-5;
  double trace_spectrum = 1e-8;
  double pairing_gap = 1e-6;
  double cross_formula = 1e-6;
  double torsion = 1e-5;
  double lenard = 1e-5;
  double involution = 1e-5;
  double drift_relative = 1e-5;
  double energy_drift = 1e-7;

  Tolerances scaled(double factor) const;
  nlohmann::ordered_json to_json() const;
};

}  // namespace nonnoether
