#include "nonnoether/hamiltonian.hpp"

#include <cmath>
#include <utility>

namespace nonnoether {

SymplecticStructure::SymplecticStructure(MatrixField components, bool constant)
    : components_(std::move(components)), constant_(constant) {}

SymplecticStructure SymplecticStructure::canonical(int n) {
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  m.topRightCorner(n, n) = Matrix::Identity(n, n);
  m.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return SymplecticStructure([m](const PhasePoint&) { return m; }, true);
}

Matrix SymplecticStructure::matrix(const PhasePoint& x) const {
  Matrix m = components_(x);
  if (m.rows() != x.dim() || m.cols() != x.dim()) throw StructureError("omega has wrong size");
  if (!m.allFinite()) throw NumericalDomainError("omega has non-finite components");
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  if ((m + m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw StructureError("omega is not antisymmetric");
  }
  return m;
}

FormField SymplecticStructure::form_field() const {
  return [self = *this](const PhasePoint& x) { return self.form(x); };
}

Box Box::uniform(int dim, double lo, double hi) {
  return Box{Vector::Constant(dim, lo), Vector::Constant(dim, hi)};
}

bool Box::contains(const PhasePoint& x) const {
  for (int i = 0; i < x.dim(); ++i) {
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  }
  return true;
}

PhasePoint Box::center() const { return PhasePoint(Vector(0.5 * (lo + hi))); }

PhasePoint Box::sample(std::mt19937_64& rng) const {
  Vector v(dim());
  for (int i = 0; i < dim(); ++i) {
    std::uniform_real_distribution<double> u(lo[i], hi[i]);
    v[i] = u(rng);
  }
  return PhasePoint(std::move(v));
}

HamiltonianSystem::HamiltonianSystem(std::string name, int n, SymplecticStructure omega, ScalarField h,
                                     std::optional<VectorField> symmetry, Box domain)
    : name_(std::move(name)),
      n_(n),
      omega_(std::move(omega)),
      h_(std::move(h)),
      symmetry_(std::move(symmetry)),
      domain_(std::move(domain)) {
  if (n < 1) throw DegreeError("configuration dimension n must be >= 1");
  if (2 * n > kMaxPhaseDim) throw CapacityError("phase dimension exceeds " + std::to_string(kMaxPhaseDim));
  if (domain_.dim() != 2 * n || domain_.hi.size() != 2 * n) throw DegreeError("domain box has wrong dimension");
}

const VectorField& HamiltonianSystem::require_symmetry() const {
  if (!symmetry_) throw MissingSymmetryError();
  return *symmetry_;
}

HamiltonianSystem HamiltonianSystem::with_symmetry(std::optional<VectorField> e) const {
  HamiltonianSystem copy = *this;
  copy.symmetry_ = std::move(e);
  return copy;
}

HamiltonianSystem HamiltonianSystem::with_omega(SymplecticStructure omega) const {
  HamiltonianSystem copy = *this;
  copy.omega_ = std::move(omega);
  return copy;
}

Matrix omega_inverse_matrix(const HamiltonianSystem& sys, const PhasePoint& x) {
  const Matrix m = sys.omega().matrix(x);
  Eigen::FullPivLU<Matrix> lu(m);
  const double det = lu.determinant();
  if (!(std::abs(det) > 1e-12)) {
    throw DegenerateSymplecticError("omega is degenerate (|det| = " + std::to_string(std::abs(det)) + ")");
  }
  Matrix w = lu.inverse();
  // The inverse of an antisymmetric matrix is antisymmetric; remove round-off.
  return 0.5 * (w - w.transpose());
}

MultivectorSample omega_inverse(const HamiltonianSystem& sys, const PhasePoint& x) {
  return MultivectorSample::from_matrix(omega_inverse_matrix(sys, x));
}

BivectorField omega_inverse_field(const HamiltonianSystem& sys) {
  return [sys](const PhasePoint& x) { return omega_inverse(sys, x); };
}

Vector hamiltonian_vf(const HamiltonianSystem& sys, const ScalarField& f, const PhasePoint& x, FiniteDifference fd) {
  return omega_inverse_matrix(sys, x).transpose() * gradient(f, x, fd);
}

VectorField hamiltonian_field(const HamiltonianSystem& sys, ScalarField f, FiniteDifference fd) {
  return [sys, f = std::move(f), fd](const PhasePoint& x) { return hamiltonian_vf(sys, f, x, fd); };
}

double poisson_from_gradients(const Matrix& w, const Vector& df, const Vector& dg) { return dg.dot(w * df); }

double poisson_bracket(const HamiltonianSystem& sys, const ScalarField& f, const ScalarField& g, const PhasePoint& x,
                       FiniteDifference fd) {
  return poisson_from_gradients(omega_inverse_matrix(sys, x), gradient(f, x, fd), gradient(g, x, fd));
}

LiouvilleResiduals liouville_residuals(const HamiltonianSystem& sys, const BivectorField& w, const PhasePoint& x,
                                       FiniteDifference fd) {
  const VectorField xh = hamiltonian_field(sys, sys.hamiltonian(), fd);
  LiouvilleResiduals r;
  r.form = lie_derivative_form(xh, sys.omega().form_field(), 2, x, fd).max_abs();
  r.bivector = lie_derivative_multivector(xh, w, x, fd).max_abs();
  return r;
}

LiouvilleResiduals liouville_residuals(const HamiltonianSystem& sys, const PhasePoint& x, FiniteDifference fd) {
  return liouville_residuals(sys, omega_inverse_field(sys), x, fd);
}

SymmetryResidual symmetry_residual(const HamiltonianSystem& sys, const PhasePoint& x, FiniteDifference fd) {
  const VectorField& e = sys.require_symmetry();
  const VectorField xh = hamiltonian_field(sys, sys.hamiltonian(), fd);
  SymmetryResidual r;
  // X_h is already a difference quotient; differencing it again with the same
  // step amplifies its rounding by 1/eps, so the outer stencil uses sqrt(eps).
  const FiniteDifference outer{std::sqrt(fd.eps)};
  r.commutator = lie_bracket(e, xh, x, outer).cwiseAbs().maxCoeff();
  r.witness = lie_derivative_form(e, sys.omega().form_field(), 2, x, fd).max_abs();
  return r;
}

}  // namespace nonnoether
