#pragma once

#include <optional>
#include <random>
#include <string>

#include "nonnoether/geometry.hpp"

namespace nonnoether {

/// Symplectic 2-form given by its component matrix omega_ij at each point.
class SymplecticStructure {
 public:
  SymplecticStructure(MatrixField components, bool constant);

  /// sum_i dx_i ^ dx_{n+i}: block matrix [[0, I], [-I, 0]].
  static SymplecticStructure canonical(int n);

  /// Component matrix at x; throws StructureError if not antisymmetric.
  Matrix matrix(const PhasePoint& x) const;
  FormSample form(const PhasePoint& x) const { return FormSample::from_matrix(matrix(x)); }
  FormField form_field() const;
  bool is_constant() const { return constant_; }

 private:
  MatrixField components_;
  bool constant_;
};

/// Axis-aligned working domain for sampling and trajectory checks.
struct Box {
  Vector lo;
  Vector hi;

  static Box uniform(int dim, double lo, double hi);
  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const PhasePoint& x) const;
  PhasePoint center() const;
  PhasePoint sample(std::mt19937_64& rng) const;
};

class HamiltonianSystem {
 public:
  HamiltonianSystem(std::string name, int n, SymplecticStructure omega, ScalarField h,
                    std::optional<VectorField> symmetry, Box domain);

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const SymplecticStructure& omega() const { return omega_; }
  const ScalarField& hamiltonian() const { return h_; }
  const std::optional<VectorField>& symmetry() const { return symmetry_; }
  const VectorField& require_symmetry() const;
  const Box& domain() const { return domain_; }

  HamiltonianSystem with_symmetry(std::optional<VectorField> e) const;
  HamiltonianSystem with_omega(SymplecticStructure omega) const;

 private:
  std::string name_;
  int n_;
  SymplecticStructure omega_;
  ScalarField h_;
  std::optional<VectorField> symmetry_;
  Box domain_;
};

/// Inverse component matrix W with W * omega = Id.
Matrix omega_inverse_matrix(const HamiltonianSystem& sys, const PhasePoint& x);
MultivectorSample omega_inverse(const HamiltonianSystem& sys, const PhasePoint& x);
BivectorField omega_inverse_field(const HamiltonianSystem& sys);

/// X_f = phi_omega^{-1}(df): X_f^j = W^{ij} d_i f. With canonical omega and
/// h = (q^2 + p^2)/2 this gives X_h = (p, -q).
Vector hamiltonian_vf(const HamiltonianSystem& sys, const ScalarField& f, const PhasePoint& x,
                      FiniteDifference fd = {});
VectorField hamiltonian_field(const HamiltonianSystem& sys, ScalarField f, FiniteDifference fd = {});

/// {f, g} = X_g(f) = W^{ij} d_i g d_j f, so {q, p} = 1 canonically and
/// df/dt = {f, h}.
double poisson_bracket(const HamiltonianSystem& sys, const ScalarField& f, const ScalarField& g,
                       const PhasePoint& x, FiniteDifference fd = {});
double poisson_from_gradients(const Matrix& w, const Vector& df, const Vector& dg);

struct LiouvilleResiduals {
  double form = 0.0;      ///< ||L_{X_h} omega||_inf
  double bivector = 0.0;  ///< ||L_{X_h} W||_inf
};

LiouvilleResiduals liouville_residuals(const HamiltonianSystem& sys, const PhasePoint& x,
                                       FiniteDifference fd = {});
/// Same residuals with an explicit bivector field in place of omega^{-1}.
LiouvilleResiduals liouville_residuals(const HamiltonianSystem& sys, const BivectorField& w,
                                       const PhasePoint& x, FiniteDifference fd = {});

struct SymmetryResidual {
  double commutator = 0.0;  ///< ||[E, X_h]||_inf
  double witness = 0.0;     ///< ||L_E omega||_inf, zero for Noether-type E
};

SymmetryResidual symmetry_residual(const HamiltonianSystem& sys, const PhasePoint& x,
                                   FiniteDifference fd = {});

}  // namespace nonnoether
