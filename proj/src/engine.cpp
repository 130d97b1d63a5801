#include "nonnoether/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "nonnoether/symmetric.hpp"

namespace nonnoether {

FormSample omega_E(const HamiltonianSystem& sys, const PhasePoint& x, FiniteDifference fd) {
  const VectorField& e = sys.require_symmetry();
  return lie_derivative_form(e, sys.omega().form_field(), 2, x, fd);
}

FormField omega_E_field(const HamiltonianSystem& sys, FiniteDifference fd) {
  sys.require_symmetry();
  return [sys, fd](const PhasePoint& x) { return omega_E(sys, x, fd); };
}

Matrix recursion_from(const Matrix& omega_e, const Matrix& w) {
  const Matrix r = w * omega_e;
  const FormSample form = FormSample::from_matrix(omega_e);
  const double scale = 1.0 + r.cwiseAbs().maxCoeff();
  for (int m = 0; m < r.rows(); ++m) {
    // phi_omega^{-1}(dx_m) = i_W dx_m, then phi_{omega_E}(X) = i_X omega_E
    const Vector x_m = w.row(m).transpose();
    const Vector composed = interior_product(x_m, form).to_vector();
    const double gap = (composed - r.row(m).transpose()).cwiseAbs().maxCoeff();
    if (gap > 1e-9 * scale) {
      throw InternalConsistencyError("recursion matrix disagrees with phi_omegaE o phi_omega^-1 (gap " +
                                     std::to_string(gap) + ")");
    }
  }
  return r;
}

RecursionOperatorSample recursion_matrix(const HamiltonianSystem& sys, const PhasePoint& x, FiniteDifference fd) {
  return {recursion_from(omega_E(sys, x, fd).to_matrix(), omega_inverse_matrix(sys, x)), x};
}

RecursionOperatorSample recursion_matrix_calibration(const HamiltonianSystem& sys, const PhasePoint& x) {
  return {recursion_from(sys.omega().matrix(x), omega_inverse_matrix(sys, x)), x};
}

MatrixField recursion_field(const HamiltonianSystem& sys, FiniteDifference fd) {
  sys.require_symmetry();
  return [sys, fd](const PhasePoint& x) { return recursion_matrix(sys, x, fd).matrix; };
}

std::vector<double> lutzky_integrals(const FormSample& omega_e, const MultivectorSample& w) {
  if (omega_e.degree() != 2 || w.degree() != 2) throw DegreeError("lutzky integrals need 2-form and bivector");
  const int n = omega_e.dim() / 2;
  std::vector<double> out;
  out.reserve(n);
  FormSample form_power = FormSample::scalar(omega_e.dim(), 1.0);
  MultivectorSample bivector_power = MultivectorSample::scalar(w.dim(), 1.0);
  for (int k = 1; k <= n; ++k) {
    form_power = wedge(form_power, omega_e);
    bivector_power = wedge(bivector_power, w);
    out.push_back(pairing(form_power, bivector_power));
  }
  return out;
}

std::vector<double> lutzky_integrals(const HamiltonianSystem& sys, const PhasePoint& x, FiniteDifference fd) {
  return lutzky_integrals(omega_E(sys, x, fd), omega_inverse(sys, x));
}

double convention_constant(int /*n*/, int k) {
  // <omega_E^k, W^k> with W = omega^{-1}: (-1)^k (k!)^2 e_k, independent of n.
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return ((k % 2 == 0) ? 1.0 : -1.0) * factorial * factorial;
}

namespace {

bool complex_less(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

Spectrum spectrum(const Matrix& r) {
  Spectrum out;
  Eigen::EigenSolver<Matrix> solver(r, false);
  if (solver.info() != Eigen::Success) throw NumericalDomainError("eigenvalue computation failed");
  const auto& ev = solver.eigenvalues();
  out.raw.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.raw.begin(), out.raw.end(), complex_less);

  // Greedy nearest-neighbour matching over the sorted list.
  std::vector<bool> used(out.raw.size(), false);
  for (std::size_t i = 0; i < out.raw.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::size_t best = out.raw.size();
    double best_gap = 0.0;
    for (std::size_t j = i + 1; j < out.raw.size(); ++j) {
      if (used[j]) continue;
      const double gap = std::abs(out.raw[i] - out.raw[j]);
      if (best == out.raw.size() || gap < best_gap) {
        best = j;
        best_gap = gap;
      }
    }
    if (best == out.raw.size()) {
      out.paired.push_back(out.raw[i]);
      out.pairing_ok = false;
      continue;
    }
    used[best] = true;
    out.pairing_gap = std::max(out.pairing_gap, best_gap / (1.0 + std::abs(out.raw[i])));
    out.paired.push_back(0.5 * (out.raw[i] + out.raw[best]));
  }
  std::sort(out.paired.begin(), out.paired.end(), complex_less);
  if (out.pairing_gap > kPairingTolerance) out.pairing_ok = false;
  const double scale = 1.0 + r.cwiseAbs().maxCoeff();
  for (const auto& v : out.raw) {
    if (std::abs(v.imag()) > 1e-9 * scale) out.has_complex = true;
  }
  return out;
}

Spectrum spectrum(const HamiltonianSystem& sys, const PhasePoint& x, FiniteDifference fd) {
  return spectrum(recursion_matrix(sys, x, fd).matrix);
}

std::vector<double> power_traces(const Matrix& r, int count) {
  if (count < 1) throw DegreeError("power trace count must be >= 1");
  std::vector<double> out;
  out.reserve(count);
  Matrix power = r;
  for (int k = 1; k <= count; ++k) {
    out.push_back(power.trace());
    if (k < count) power = (power * r).eval();
  }
  return out;
}

std::vector<double> power_traces(const HamiltonianSystem& sys, const PhasePoint& x, int count, FiniteDifference fd) {
  return power_traces(recursion_matrix(sys, x, fd).matrix, count);
}

double ordered_distinct_sum(std::span<const double> lambda, int k) {
  std::vector<bool> taken(lambda.size(), false);
  std::function<double(int)> recurse = [&](int depth) -> double {
    if (depth == k) return 1.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      if (taken[i]) continue;
      taken[i] = true;
      sum += lambda[i] * recurse(depth + 1);
      taken[i] = false;
    }
    return sum;
  };
  return recurse(0);
}

namespace {

std::vector<double> real_parts(const std::vector<std::complex<double>>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& c : v) out.push_back(c.real());
  return out;
}

}  // namespace

ElementaryComparison elementary_from_spectrum(const HamiltonianSystem& sys, const PhasePoint& x, FiniteDifference fd) {
  const Matrix r = recursion_matrix(sys, x, fd).matrix;
  const Spectrum spec = spectrum(r);
  ElementaryComparison out;
  out.lutzky = lutzky_integrals(sys, x, fd);
  const auto e = elementary_symmetric(std::span<const std::complex<double>>(spec.paired));
  const std::vector<double> lam = real_parts(spec.paired);
  const int n = sys.n();
  for (int k = 1; k <= n; ++k) {
    out.elementary.push_back(e[k - 1].real());
    out.ordered_distinct.push_back(ordered_distinct_sum(lam, k));
    out.residual.push_back(std::abs(out.lutzky[k - 1] - convention_constant(n, k) * e[k - 1].real()));
  }
  return out;
}

TorsionSample fn_torsion(const MatrixField& a, const PhasePoint& x, FiniteDifference fd) {
  const int dim = x.dim();
  auto basis = [dim](int i) -> VectorField {
    return [dim, i](const PhasePoint&) { return Vector(Vector::Unit(dim, i)); };
  };
  auto applied = [&a](VectorField v) -> VectorField {
    return [&a, v = std::move(v)](const PhasePoint& y) { return Vector(a(y) * v(y)); };
  };
  const Matrix a_x = a(x);
  TorsionSample out;
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const VectorField ei = basis(i);
      const VectorField ej = basis(j);
      const VectorField aei = applied(ei);
      const VectorField aej = applied(ej);
      const Vector inner = lie_bracket(aei, ej, x, fd) + lie_bracket(ei, aej, x, fd) -
                           a_x * lie_bracket(ei, ej, x, fd);
      const Vector t = lie_bracket(aei, aej, x, fd) - a_x * inner;
      out.max_residual = std::max(out.max_residual, t.cwiseAbs().maxCoeff());
    }
  }
  return out;
}

LenardResidual lenard_residual(const HamiltonianSystem& sys, const PhasePoint& x, int count, FiniteDifference fd) {
  if (count < 2) throw DegreeError("lenard residual needs at least two traces");
  const Matrix r = recursion_matrix(sys, x, fd).matrix;
  std::vector<Vector> grads;
  for (int k = 1; k <= count; ++k) grads.push_back(gradient(power_trace_field(sys, k, fd), x, fd));
  LenardResidual out;
  for (int k = 1; k < count; ++k) {
    const Vector& dmu_k = grads[k - 1];
    const Vector& dmu_next = grads[k];
    out.unnormalized.push_back((dmu_next - r.transpose() * dmu_k).cwiseAbs().maxCoeff());
    const Vector dnu_k = dmu_k / k;
    const Vector dnu_next = dmu_next / (k + 1);
    out.normalized.push_back((dnu_next - r.transpose() * dnu_k).cwiseAbs().maxCoeff());
  }
  return out;
}

Matrix involution_matrix(const HamiltonianSystem& sys, std::span<const PhasePoint> points, int count,
                         FiniteDifference fd) {
  if (count < 1) throw DegreeError("involution matrix needs count >= 1");
  Matrix out = Matrix::Zero(count, count);
  std::vector<ScalarField> nu;
  for (int k = 1; k <= count; ++k) nu.push_back(normalized_trace_field(sys, k, fd));
  for (const PhasePoint& x : points) {
    const Matrix w = omega_inverse_matrix(sys, x);
    std::vector<Vector> grads;
    for (const auto& f : nu) grads.push_back(gradient(f, x, fd));
    for (int j = 0; j < count; ++j) {
      for (int k = 0; k < count; ++k) {
        out(j, k) = std::max(out(j, k), std::abs(poisson_from_gradients(w, grads[j], grads[k])));
      }
    }
  }
  return out;
}

InvariantBundle invariant_bundle(const HamiltonianSystem& sys, const PhasePoint& x, int trace_count,
                                 FiniteDifference fd) {
  const int n = sys.n();
  const FormSample oe = omega_E(sys, x, fd);
  const Matrix w = omega_inverse_matrix(sys, x);
  const Matrix r = recursion_from(oe.to_matrix(), w);
  const Spectrum spec = spectrum(r);

  InvariantBundle out;
  out.point = x.to_vector();
  out.l = lutzky_integrals(oe, MultivectorSample::from_matrix(w));
  out.lambda = spec.paired;
  out.mu_hat = power_traces(r, trace_count);
  out.pairing_gap = spec.pairing_gap;
  out.pairing_ok = spec.pairing_ok;
  out.has_complex = spec.has_complex;

  const auto e = elementary_symmetric(std::span<const std::complex<double>>(spec.paired));
  for (int k = 1; k <= n; ++k) {
    out.cross_residuals.push_back(std::abs(out.l[k - 1] - convention_constant(n, k) * e[k - 1].real()));
  }
  for (int k = 1; k <= trace_count; ++k) {
    std::complex<double> sum = 0.0;
    for (const auto& lam : spec.paired) sum += std::pow(lam, k);
    out.cross_residuals.push_back(std::abs(out.mu_hat[k - 1] - 2.0 * sum.real()));
  }
  std::vector<double> half_traces = power_traces(r, n);
  for (double& v : half_traces) v *= 0.5;
  const auto e_from_traces = elementary_from_power_sums(half_traces);
  for (int k = 1; k <= n; ++k) {
    out.cross_residuals.push_back(std::abs(out.l[k - 1] - convention_constant(n, k) * e_from_traces[k - 1]));
  }
  return out;
}

ScalarField lutzky_field(const HamiltonianSystem& sys, int k, FiniteDifference fd) {
  if (k < 1 || k > sys.n()) throw DegreeError("lutzky index out of range");
  sys.require_symmetry();
  return [sys, k, fd](const PhasePoint& x) { return lutzky_integrals(sys, x, fd)[k - 1]; };
}

ScalarField power_trace_field(const HamiltonianSystem& sys, int k, FiniteDifference fd) {
  if (k < 1) throw DegreeError("trace index must be >= 1");
  sys.require_symmetry();
  return [sys, k, fd](const PhasePoint& x) { return power_traces(sys, x, k, fd).back(); };
}

ScalarField normalized_trace_field(const HamiltonianSystem& sys, int k, FiniteDifference fd) {
  ScalarField mu = power_trace_field(sys, k, fd);
  return [mu = std::move(mu), k](const PhasePoint& x) { return mu(x) / k; };
}

ScalarField eigenvalue_field(const HamiltonianSystem& sys, int k, FiniteDifference fd) {
  if (k < 1 || k > sys.n()) throw DegreeError("eigenvalue index out of range");
  sys.require_symmetry();
  return [sys, k, fd](const PhasePoint& x) { return spectrum(sys, x, fd).paired[k - 1].real(); };
}

}  // namespace nonnoether
