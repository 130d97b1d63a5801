#pragma once

// Pointwise exterior and tensor calculus on R^{2n}.
//
// Fields are black-box evaluators; everything returned here is a dense sample
// at a single point. Derivatives use central differences with per-coordinate
// step eps * max(1, |x_i|).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "nonnoether/errors.hpp"

namespace nonnoether {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Largest phase-space dimension supported by the antisymmetric storage.
inline constexpr int kMaxPhaseDim = 16;

class PhasePoint {
 public:
  explicit PhasePoint(Vector coords);
  PhasePoint(std::initializer_list<double> coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  int n() const { return dim() / 2; }
  double operator[](int i) const { return coords_[i]; }
  const Vector& coords() const { return coords_; }
  std::vector<double> to_vector() const;

 private:
  Vector coords_;
};

using ScalarField = std::function<double(const PhasePoint&)>;
using VectorField = std::function<Vector(const PhasePoint&)>;
/// (1,1)-tensor field, returned as the matrix acting on tangent vectors:
/// (A X)^j = M(j, i) X^i.
using MatrixField = std::function<Matrix(const PhasePoint&)>;

struct FiniteDifference {
  double eps = 1e-5;
};

namespace detail {

std::size_t binomial(int n, int k);
/// Colexicographic rank of a strictly increasing index tuple.
std::size_t combination_rank(std::span<const int> sorted);
/// Sorts `indices` in place; returns the permutation sign, or 0 on a repeat.
int sort_with_sign(std::span<int> indices);
/// All strictly increasing p-tuples over [0, dim), listed by colex rank.
const std::vector<std::vector<int>>& combinations(int dim, int p);

}  // namespace detail

enum class Variance { covariant, contravariant };

/// Fully antisymmetric rank-p array over `dim` indices, stored as its
/// strictly-increasing-index components. Antisymmetry holds by construction.
/// A sample whose degree exceeds `dim` is identically zero and flagged by
/// exceeds_dimension().
template <Variance V>
class AntisymmetricSample {
 public:
  AntisymmetricSample(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 1 || dim > kMaxPhaseDim) {
      throw CapacityError("antisymmetric storage supports dimension 1.." +
                          std::to_string(kMaxPhaseDim) + ", got " + std::to_string(dim));
    }
    if (degree < 0) throw DegreeError("negative degree");
    if (degree <= dim) values_.assign(detail::binomial(dim, degree), 0.0);
  }

  static AntisymmetricSample scalar(int dim, double value) {
    AntisymmetricSample s(dim, 0);
    s.values_[0] = value;
    return s;
  }

  static AntisymmetricSample from_vector(const Vector& v) {
    AntisymmetricSample s(static_cast<int>(v.size()), 1);
    for (int i = 0; i < v.size(); ++i) s.values_[i] = v[i];
    return s;
  }

  /// Degree-2 sample from an antisymmetric matrix; rejects asymmetric input.
  static AntisymmetricSample from_matrix(const Matrix& m) {
    if (m.rows() != m.cols()) throw StructureError("matrix is not square");
    const int d = static_cast<int>(m.rows());
    const double scale = 1.0 + m.cwiseAbs().maxCoeff();
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        if (std::abs(m(i, j) + m(j, i)) > 1e-12 * scale) {
          throw StructureError("matrix is not antisymmetric at (" + std::to_string(i) + "," +
                               std::to_string(j) + ")");
        }
      }
    }
    AntisymmetricSample s(d, 2);
    for (int j = 1; j < d; ++j) {
      for (int i = 0; i < j; ++i) {
        const int idx[2] = {i, j};
        s.values_[detail::combination_rank(idx)] = m(i, j);
      }
    }
    return s;
  }

  /// Unit basis element e_{i1} ^ ... ^ e_{ip} (indices need not be sorted).
  static AntisymmetricSample basis(int dim, std::vector<int> indices) {
    AntisymmetricSample s(dim, static_cast<int>(indices.size()));
    const int sign = detail::sort_with_sign(indices);
    if (sign != 0 && !s.exceeds_dimension()) {
      s.values_[detail::combination_rank(indices)] = sign;
    }
    return s;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  bool exceeds_dimension() const { return degree_ > dim_; }

  /// Component at an arbitrary index tuple.
  double operator()(std::vector<int> indices) const {
    if (static_cast<int>(indices.size()) != degree_) throw DegreeError("index count != degree");
    if (exceeds_dimension()) return 0.0;
    const int sign = detail::sort_with_sign(indices);
    if (sign == 0) return 0.0;
    return sign * values_[detail::combination_rank(indices)];
  }
  double at(std::initializer_list<int> indices) const { return (*this)(std::vector<int>(indices)); }

  std::span<const double> essential() const { return values_; }
  std::span<double> essential() { return values_; }

  Matrix to_matrix() const {
    if (degree_ != 2) throw DegreeError("to_matrix requires degree 2");
    Matrix m = Matrix::Zero(dim_, dim_);
    for (int j = 1; j < dim_; ++j) {
      for (int i = 0; i < j; ++i) {
        const int idx[2] = {i, j};
        m(i, j) = values_[detail::combination_rank(idx)];
        m(j, i) = -m(i, j);
      }
    }
    return m;
  }

  Vector to_vector() const {
    if (degree_ != 1) throw DegreeError("to_vector requires degree 1");
    return Eigen::Map<const Vector>(values_.data(), dim_);
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  AntisymmetricSample& operator+=(const AntisymmetricSample& o) {
    check_same_shape(o);
    for (std::size_t r = 0; r < values_.size(); ++r) values_[r] += o.values_[r];
    return *this;
  }
  AntisymmetricSample& operator-=(const AntisymmetricSample& o) {
    check_same_shape(o);
    for (std::size_t r = 0; r < values_.size(); ++r) values_[r] -= o.values_[r];
    return *this;
  }
  AntisymmetricSample& operator*=(double c) {
    for (double& v : values_) v *= c;
    return *this;
  }
  friend AntisymmetricSample operator+(AntisymmetricSample a, const AntisymmetricSample& b) { return a += b; }
  friend AntisymmetricSample operator-(AntisymmetricSample a, const AntisymmetricSample& b) { return a -= b; }
  friend AntisymmetricSample operator*(double c, AntisymmetricSample a) { return a *= c; }

 private:
  void check_same_shape(const AntisymmetricSample& o) const {
    if (o.dim_ != dim_ || o.degree_ != degree_) throw DegreeError("shape mismatch");
  }

  int dim_;
  int degree_;
  std::vector<double> values_;
};

using FormSample = AntisymmetricSample<Variance::covariant>;
using MultivectorSample = AntisymmetricSample<Variance::contravariant>;

using FormField = std::function<FormSample(const PhasePoint&)>;
using BivectorField = std::function<MultivectorSample(const PhasePoint&)>;

/// Sum over shuffles: (A ^ B)_K = sum_{K = I u J} sign(I, J) A_I B_J.
/// Equivalent to Alt(A (x) B) * (p+q)! / (p! q!).
template <Variance V>
AntisymmetricSample<V> wedge(const AntisymmetricSample<V>& a, const AntisymmetricSample<V>& b) {
  if (a.dim() != b.dim()) throw DegreeError("wedge of samples with different dimension");
  const int dim = a.dim();
  const int p = a.degree();
  const int q = b.degree();
  AntisymmetricSample<V> out(dim, p + q);
  if (out.exceeds_dimension() || a.exceeds_dimension() || b.exceeds_dimension()) return out;
  const auto& left = detail::combinations(dim, p);
  const auto& right = detail::combinations(dim, q);
  auto ea = a.essential();
  auto eb = b.essential();
  auto eo = out.essential();
  std::vector<int> merged(p + q);
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (ea[i] == 0.0) continue;
    for (std::size_t j = 0; j < right.size(); ++j) {
      if (eb[j] == 0.0) continue;
      std::copy(left[i].begin(), left[i].end(), merged.begin());
      std::copy(right[j].begin(), right[j].end(), merged.begin() + p);
      const int sign = detail::sort_with_sign(merged);
      if (sign == 0) continue;
      eo[detail::combination_rank(merged)] += sign * ea[i] * eb[j];
    }
  }
  return out;
}

/// k-fold wedge power; k = 0 gives the unit scalar.
template <Variance V>
AntisymmetricSample<V> wedge_power(const AntisymmetricSample<V>& a, int k) {
  AntisymmetricSample<V> acc = AntisymmetricSample<V>::scalar(a.dim(), 1.0);
  for (int i = 0; i < k; ++i) acc = wedge(acc, a);
  return acc;
}

/// <alpha, P> = (1/p!) alpha_{i1..ip} P^{i1..ip}, so <dx1^dx2, d1^d2> = 1.
double pairing(const FormSample& alpha, const MultivectorSample& p);

/// (i_X alpha)_{i2..ip} = X^j alpha_{j i2..ip}.
FormSample interior_product(const Vector& x_vec, const FormSample& alpha);
FormSample interior_product(const VectorField& x_field, const FormSample& alpha, const PhasePoint& x);

/// J(a, i) = dF^a / dx_i.
Matrix jacobian(const VectorField& f, const PhasePoint& x, FiniteDifference fd = {});
Vector gradient(const ScalarField& f, const PhasePoint& x, FiniteDifference fd = {});

FormSample exterior_derivative(const FormField& alpha, int degree, const PhasePoint& x,
                               FiniteDifference fd = {});

/// [X, Y]^i = X^j d_j Y^i - Y^j d_j X^i.
Vector lie_bracket(const VectorField& x_field, const VectorField& y_field, const PhasePoint& x,
                   FiniteDifference fd = {});

/// X(f) = i_X df.
double lie_derivative_scalar(const VectorField& x_field, const ScalarField& f, const PhasePoint& x,
                             FiniteDifference fd = {});

/// Cartan formula L_X alpha = i_X d alpha + d i_X alpha.
FormSample lie_derivative_form(const VectorField& x_field, const FormField& alpha, int degree,
                               const PhasePoint& x, FiniteDifference fd = {});

/// (L_X W)^{ij} = X^k d_k W^{ij} - W^{kj} d_k X^i - W^{ik} d_k X^j.
MultivectorSample lie_derivative_multivector(const VectorField& x_field, const BivectorField& w,
                                             const PhasePoint& x, FiniteDifference fd = {});

/// Constant form field returning `sample` everywhere.
FormField constant_form(FormSample sample);
BivectorField constant_bivector(MultivectorSample sample);

}  // namespace nonnoether
