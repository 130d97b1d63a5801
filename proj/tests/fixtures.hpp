#pragma once

#include <optional>
#include <string>

#include "nonnoether/hamiltonian.hpp"

namespace fixtures {

using namespace nonnoether;

inline HamiltonianSystem make_system(std::string name, int n, ScalarField h, std::optional<VectorField> e = {},
                                     double lo = -1.0, double hi = 1.0) {
  return HamiltonianSystem(std::move(name), n, SymplecticStructure::canonical(n), std::move(h), std::move(e),
                           Box::uniform(2 * n, lo, hi));
}

inline HamiltonianSystem oscillator(std::optional<VectorField> e = {}) {
  return make_system("oscillator", 1, [](const PhasePoint& x) { return 0.5 * (x[0] * x[0] + x[1] * x[1]); },
                     std::move(e));
}

inline VectorField action_squared(int n) {
  return [n](const PhasePoint& x) {
    Vector v = Vector::Zero(2 * n);
    for (int i = 0; i < n; ++i) v[n + i] = x[n + i] * x[n + i];
    return v;
  };
}

// Coordinates (th_1..th_n, I_1..I_n), h = sum I_i, E = sum I_i^2 d/dI_i.
inline HamiltonianSystem action_angle(int n) {
  Box box;
  box.lo = Vector::Constant(2 * n, -3.0);
  box.hi = Vector::Constant(2 * n, 3.0);
  box.lo.tail(n).setConstant(0.2);
  box.hi.tail(n).setConstant(1.2);
  return HamiltonianSystem(
      "action-angle", n, SymplecticStructure::canonical(n),
      [n](const PhasePoint& x) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += x[n + i];
        return s;
      },
      action_squared(n), box);
}

}  // namespace fixtures
