#pragma once

// Conserved quantities generated by a non-Noether symmetry E.
//
// omega_E = L_E omega deforms the symplectic form. The recursion operator
// A = phi_{omega_E} o phi_omega^{-1} is stored as the matrix R = W * omega_E
// acting on tangent vectors; on 1-forms it acts by R^T, so d^f = R^T df.
// Its eigenvalues come in equal pairs. From it we build the Lutzky integrals
// l_k = <omega_E^k, W^k>, the power traces Tr(R^k) and the deduplicated
// spectrum, all of which are constants of motion when [E, X_h] = 0.

#include <complex>
#include <span>
#include <vector>

#include "nonnoether/hamiltonian.hpp"

namespace nonnoether {

FormSample omega_E(const HamiltonianSystem& sys, const PhasePoint& x, FiniteDifference fd = {});
FormField omega_E_field(const HamiltonianSystem& sys, FiniteDifference fd = {});

struct RecursionOperatorSample {
  Matrix matrix;  ///< acts on tangent vectors; transpose acts on 1-forms
  PhasePoint point;
};

/// R = W * omega_E, checked against phi_{omega_E}(phi_omega^{-1}(dx_m)) for
/// every basis covector.
Matrix recursion_from(const Matrix& omega_e, const Matrix& w);
RecursionOperatorSample recursion_matrix(const HamiltonianSystem& sys, const PhasePoint& x, FiniteDifference fd = {});
/// omega_E replaced by omega itself; must return the identity.
RecursionOperatorSample recursion_matrix_calibration(const HamiltonianSystem& sys, const PhasePoint& x);
MatrixField recursion_field(const HamiltonianSystem& sys, FiniteDifference fd = {});

/// l_k = <omega_E^k, W^k> for k = 1..n.
std::vector<double> lutzky_integrals(const FormSample& omega_e, const MultivectorSample& w);
std::vector<double> lutzky_integrals(const HamiltonianSystem& sys, const PhasePoint& x, FiniteDifference fd = {});

/// l_k = c(n, k) * e_k(lambda) under this library's wedge and pairing
/// normalization. Frozen from the brute-force permutation oracle.
double convention_constant(int n, int k);

struct Spectrum {
  std::vector<std::complex<double>> raw;     ///< all 2n eigenvalues
  std::vector<std::complex<double>> paired;  ///< n values, one per matched pair
  double pairing_gap = 0.0;                  ///< worst |a - b| / (1 + |a|) over pairs
  bool pairing_ok = true;                    ///< false raises SpectrumPairingWarning
  bool has_complex = false;
};

inline constexpr double kPairingTolerance = 1e-6;

Spectrum spectrum(const Matrix& r);
Spectrum spectrum(const HamiltonianSystem& sys, const PhasePoint& x, FiniteDifference fd = {});

/// Tr(R^k) for k = 1..count.
std::vector<double> power_traces(const Matrix& r, int count);
std::vector<double> power_traces(const HamiltonianSystem& sys, const PhasePoint& x, int count,
                                 FiniteDifference fd = {});

/// Sum over ordered k-tuples of distinct indices of lambda_{i1}...lambda_{ik}.
/// Equals k! e_k.
double ordered_distinct_sum(std::span<const double> lambda, int k);

struct ElementaryComparison {
  std::vector<double> ordered_distinct;  ///< k! e_k
  std::vector<double> elementary;        ///< e_k of the paired spectrum
  std::vector<double> lutzky;
  std::vector<double> residual;          ///< |l_k - c(n,k) e_k|
};

ElementaryComparison elementary_from_spectrum(const HamiltonianSystem& sys, const PhasePoint& x,
                                              FiniteDifference fd = {});

struct TorsionSample {
  double max_residual = 0.0;
};

/// Froelicher-Nijenhuis torsion
///   T(A)(X, Y) = [AX, AY] - A([AX, Y] + [X, AY] - A[X, Y])
/// on all coordinate basis pairs.
TorsionSample fn_torsion(const MatrixField& a, const PhasePoint& x, FiniteDifference fd = {});

struct LenardResidual {
  std::vector<double> normalized;    ///< ||d nu_{k+1} - R^T d nu_k||, nu_k = Tr(R^k)/k
  std::vector<double> unnormalized;  ///< same with mu_k = Tr(R^k)
};

/// Residuals for k = 1..count-1.
LenardResidual lenard_residual(const HamiltonianSystem& sys, const PhasePoint& x, int count,
                               FiniteDifference fd = {});

/// Max over points of |{nu_j, nu_k}| for 1 <= j, k <= count.
Matrix involution_matrix(const HamiltonianSystem& sys, std::span<const PhasePoint> points, int count,
                         FiniteDifference fd = {});

struct InvariantBundle {
  std::vector<double> l;
  std::vector<std::complex<double>> lambda;
  std::vector<double> mu_hat;
  std::vector<double> point;
  /// |l_k - c e_k(lambda)| for k=1..n, then |mu_k - 2 sum lambda^k| for
  /// k=1..K, then |l_k - c e_k(from mu via Newton)| for k=1..n.
  std::vector<double> cross_residuals;
  double pairing_gap = 0.0;
  bool pairing_ok = true;
  bool has_complex = false;
};

InvariantBundle invariant_bundle(const HamiltonianSystem& sys, const PhasePoint& x, int trace_count,
                                 FiniteDifference fd = {});

/// Scalar fields for conservation and drift checks (k is 1-based).
ScalarField lutzky_field(const HamiltonianSystem& sys, int k, FiniteDifference fd = {});
ScalarField power_trace_field(const HamiltonianSystem& sys, int k, FiniteDifference fd = {});
ScalarField normalized_trace_field(const HamiltonianSystem& sys, int k, FiniteDifference fd = {});
/// Real part of the k-th paired eigenvalue (ordered by real part).
ScalarField eigenvalue_field(const HamiltonianSystem& sys, int k, FiniteDifference fd = {});

}  // namespace nonnoether
