#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "nonnoether/hamiltonian.hpp"
#include "oracles.hpp"

using namespace nonnoether;

namespace {

HamiltonianSystem with_matrix(const Matrix& omega) {
  const int dim = static_cast<int>(omega.rows());
  return HamiltonianSystem("m", dim / 2, SymplecticStructure([omega](const PhasePoint&) { return omega; }, true),
                           [](const PhasePoint& x) { return x[0]; }, std::nullopt, Box::uniform(dim, -1, 1));
}

const ScalarField coord_q = [](const PhasePoint& x) { return x[0]; };
const ScalarField coord_p = [](const PhasePoint& x) { return x[1]; };

}  // namespace

TEST_CASE("omega inverse examples") {
  const PhasePoint x2{0.1, 0.2};
  Matrix w = omega_inverse_matrix(with_matrix(oracle::canonical(1)), x2);
  CHECK(w(0, 1) == -1.0);
  CHECK(w(1, 0) == 1.0);

  const PhasePoint x4{0.1, 0.2, 0.3, 0.4};
  w = omega_inverse_matrix(with_matrix(oracle::canonical(2)), x4);
  CHECK((w + oracle::canonical(2)).cwiseAbs().maxCoeff() <= 1e-15);

  w = omega_inverse_matrix(with_matrix(2.0 * oracle::canonical(1)), x2);
  CHECK(w(0, 1) == doctest::Approx(-0.5));
  CHECK(w(1, 0) == doctest::Approx(0.5));

  CHECK_THROWS_AS(omega_inverse_matrix(with_matrix(1e-7 * oracle::canonical(1)), x2), DegenerateSymplecticError);
}

TEST_CASE("property: W omega = Id on random symplectic matrices") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4;
    Matrix omega = oracle::random_antisymmetric(2 * n, rng) + 2.0 * oracle::canonical(n);
    const PhasePoint x(Vector::Zero(2 * n));
    const Matrix w = omega_inverse_matrix(with_matrix(omega), x);
    CHECK((w * omega - Matrix::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((w + w.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("non-antisymmetric omega is rejected") {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  CHECK_THROWS_AS(omega_inverse_matrix(with_matrix(m), PhasePoint{0.0, 0.0}), StructureError);
}

TEST_CASE("hamiltonian vector field anchors") {
  const HamiltonianSystem osc = fixtures::oscillator();
  const Vector v = hamiltonian_vf(osc, osc.hamiltonian(), PhasePoint{1.0, 0.0});
  CHECK(std::abs(v[0]) <= 1e-9);
  CHECK(std::abs(v[1] + 1.0) <= 1e-9);

  const Vector c = hamiltonian_vf(osc, [](const PhasePoint&) { return 3.0; }, PhasePoint{0.2, 0.3});
  CHECK(c.cwiseAbs().maxCoeff() == 0.0);

  for (const PhasePoint& x : {PhasePoint{0.0, 0.0}, PhasePoint{0.4, -0.8}}) {
    const Vector t = hamiltonian_vf(osc, coord_p, x);
    CHECK(std::abs(t[0] - 1.0) <= 1e-9);
    CHECK(std::abs(t[1]) <= 1e-9);
  }
}

TEST_CASE("poisson bracket examples") {
  const HamiltonianSystem osc = fixtures::oscillator();
  const PhasePoint x{0.3, -0.6};
  CHECK(std::abs(poisson_bracket(osc, coord_q, coord_p, x) - 1.0) <= 1e-10);
  const ScalarField f = [](const PhasePoint& y) { return std::sin(y[0]) * y[1]; };
  CHECK(std::abs(poisson_bracket(osc, f, f, x)) <= 1e-10);
  const ScalarField h = osc.hamiltonian();
  const ScalarField h2 = [h](const PhasePoint& y) { return h(y) * h(y); };
  CHECK(std::abs(poisson_bracket(osc, h, h2, x)) <= 1e-7);
}

TEST_CASE("property: bracket antisymmetry, bilinearity, Leibniz") {
  const HamiltonianSystem sys = fixtures::make_system("free", 2, [](const PhasePoint& y) { return y[2] * y[2]; });
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Vector a(4), b(4), c(4);
    for (int i = 0; i < 4; ++i) {
      a[i] = u(rng);
      b[i] = u(rng);
      c[i] = u(rng);
    }
    const ScalarField f = [a](const PhasePoint& y) { return std::sin(a.dot(y.coords())) + a[0] * y[1] * y[3]; };
    const ScalarField g = [b](const PhasePoint& y) { return std::exp(0.5 * b.dot(y.coords())) + b[1] * y[0] * y[2]; };
    const ScalarField k = [c](const PhasePoint& y) { return c.dot(y.coords()) * y[2]; };
    Vector xv(4);
    for (int i = 0; i < 4; ++i) xv[i] = u(rng);
    const PhasePoint x(xv);

    const double fg = poisson_bracket(sys, f, g, x);
    CHECK(std::abs(fg + poisson_bracket(sys, g, f, x)) <= 1e-10);

    const ScalarField sum = [f, g](const PhasePoint& y) { return 2.0 * f(y) - 3.0 * g(y); };
    CHECK(std::abs(poisson_bracket(sys, sum, k, x) -
                   (2.0 * poisson_bracket(sys, f, k, x) - 3.0 * poisson_bracket(sys, g, k, x))) <= 1e-7);

    const ScalarField prod = [f, g](const PhasePoint& y) { return f(y) * g(y); };
    const double lhs = poisson_bracket(sys, prod, k, x);
    const double rhs = f(x) * poisson_bracket(sys, g, k, x) + g(x) * poisson_bracket(sys, f, k, x);
    CHECK(std::abs(lhs - rhs) <= 1e-6);
  }
}

TEST_CASE("property: X_h annihilates h") {
  const HamiltonianSystem sys = fixtures::make_system(
      "anh", 2, [](const PhasePoint& y) { return y[2] * y[2] + std::cos(y[0]) * y[3] + y[1] * y[1] * y[1]; });
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    const PhasePoint x = sys.domain().sample(rng);
    const Vector v = hamiltonian_vf(sys, sys.hamiltonian(), x);
    CHECK(std::abs(v.dot(gradient(sys.hamiltonian(), x))) <= 1e-7);
  }
}

TEST_CASE("liouville residuals") {
  const HamiltonianSystem osc = fixtures::oscillator();
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const LiouvilleResiduals r = liouville_residuals(osc, osc.domain().sample(rng));
    CHECK(r.form <= 1e-6);
    CHECK(r.bivector <= 1e-6);
  }

  const HamiltonianSystem cubic =
      fixtures::make_system("cubic", 1, [](const PhasePoint& y) { return std::pow(y[0], 3) + std::pow(y[1], 3); });
  const LiouvilleResiduals c = liouville_residuals(cubic, PhasePoint{0.2, 0.4});
  CHECK(c.form <= 1e-6);
  CHECK(c.bivector <= 1e-6);

  // A bivector that is no longer preserved: W scaled by (1 + q/2).
  const BivectorField corrupted = [](const PhasePoint& y) {
    return MultivectorSample::from_matrix((1.0 + 0.5 * y[0]) * oracle::canonical(1).inverse());
  };
  CHECK(liouville_residuals(osc, corrupted, PhasePoint{0.3, 0.8}).bivector > 0.1);
}

TEST_CASE("symmetry residual examples") {
  const HamiltonianSystem aa = fixtures::action_angle(1);
  std::mt19937_64 rng(37);
  for (int i = 0; i < 20; ++i) {
    const SymmetryResidual r = symmetry_residual(aa, aa.domain().sample(rng));
    CHECK(r.commutator <= 1e-7);
    CHECK(r.witness > 0.0);
  }

  const HamiltonianSystem osc = fixtures::oscillator();
  const HamiltonianSystem trivial = osc.with_symmetry(hamiltonian_field(osc, osc.hamiltonian()));
  const SymmetryResidual t = symmetry_residual(trivial, PhasePoint{0.4, 0.1});
  CHECK(t.commutator <= 1e-7);
  CHECK(t.witness <= 1e-7);

  const HamiltonianSystem dil = osc.with_symmetry(VectorField([](const PhasePoint& y) { return Vector{{y[0], 0.0}}; }));
  const SymmetryResidual d = symmetry_residual(dil, PhasePoint{1.0, 1.0});
  CHECK(d.commutator == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(symmetry_residual(osc, PhasePoint{0.0, 0.0}), MissingSymmetryError);
}

TEST_CASE("system construction limits") {
  CHECK_THROWS(fixtures::make_system("bad", 0, [](const PhasePoint&) { return 0.0; }));
  CHECK_THROWS_AS(fixtures::make_system("big", 9, [](const PhasePoint&) { return 0.0; }), CapacityError);
}
