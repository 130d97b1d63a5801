#include "nonnoether/tolerances.hpp"

namespace nonnoether {

Tolerances Tolerances::scaled(double factor) const {
  Tolerances t = *this;
  for (double* v : {&t.liouville, &t.symmetry, &t.conservation, &t.trace_spectrum, &t.pairing_gap, &t.cross_formula,
                    &t.torsion, &t.lenard, &t.involution, &t.drift_relative, &t.energy_drift}) {
    *v *= factor;
  }
  return t;
}

nlohmann::ordered_json Tolerances::to_json() const {
  return {
      {"liouville", liouville},
      {"symmetry", symmetry},
      {"witness_min", witness_min},
      {"negative_control_min", negative_control_min},
      {"conservation", conservation},
      {"trace_spectrum", trace_spectrum},
      {"pairing_gap", pairing_gap},
      {"cross_formula", cross_formula},
      {"torsion", torsion},
      {"lenard", lenard},
      {"involution", involution},
      {"drift_relative", drift_relative},
      {"energy_drift", energy_drift},
  };
}

}  // namespace nonnoether
