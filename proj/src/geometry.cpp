#include "nonnoether/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace nonnoether {

PhasePoint::PhasePoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2 || coords_.size() % 2 != 0) {
    throw StructureError("phase point must have even length >= 2, got " + std::to_string(coords_.size()));
  }
  if (!coords_.allFinite()) throw NumericalDomainError("phase point has non-finite coordinates");
}

PhasePoint::PhasePoint(std::initializer_list<double> coords)
    : PhasePoint(Vector(Eigen::Map<const Vector>(coords.begin(), static_cast<Eigen::Index>(coords.size())))) {}

std::vector<double> PhasePoint::to_vector() const { return {coords_.data(), coords_.data() + coords_.size()}; }

namespace detail {

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

std::size_t combination_rank(std::span<const int> sorted) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) r += binomial(sorted[i], static_cast<int>(i) + 1);
  return r;
}

int sort_with_sign(std::span<int> idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

const std::vector<std::vector<int>>& combinations(int dim, int p) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.try_emplace({dim, p});
  if (!inserted) return it->second;
  auto& out = it->second;
  out.resize(binomial(dim, p));
  // colex enumeration: increment the lowest slot that can move
  std::vector<int> c(p);
  for (int i = 0; i < p; ++i) c[i] = i;
  for (std::size_t r = 0; r < out.size(); ++r) {
    out[r] = c;
    int i = 0;
    while (i < p && ((i + 1 < p) ? c[i] + 1 == c[i + 1] : c[i] + 1 == dim)) ++i;
    if (i == p) break;
    ++c[i];
    for (int j = 0; j < i; ++j) c[j] = j;
  }
  return out;
}

}  // namespace detail

namespace {

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw NumericalDomainError(std::string("non-finite value in ") + what);
}

// Column i holds d f / d x_i for a vector-valued f.
template <class F>
Matrix central_difference(F&& f, const PhasePoint& x, FiniteDifference fd, const char* what) {
  const int dim = x.dim();
  Matrix out;
  Vector shifted = x.coords();
  for (int i = 0; i < dim; ++i) {
    const double xi = x[i];
    const double delta = fd.eps * std::max(1.0, std::abs(xi));
    const double plus = xi + delta;
    const double minus = xi - delta;
    shifted[i] = plus;
    Vector fp = f(PhasePoint(shifted));
    shifted[i] = minus;
    Vector fm = f(PhasePoint(shifted));
    shifted[i] = xi;
    require_finite(fp, what);
    require_finite(fm, what);
    if (i == 0) out.resize(fp.size(), dim);
    out.col(i) = (fp - fm) / (plus - minus);
  }
  return out;
}

template <Variance V>
Vector essential_vector(const AntisymmetricSample<V>& s) {
  auto e = s.essential();
  return Eigen::Map<const Vector>(e.data(), static_cast<Eigen::Index>(e.size()));
}

}  // namespace

double pairing(const FormSample& alpha, const MultivectorSample& p) {
  if (alpha.degree() != p.degree()) throw DegreeError("pairing of different degrees");
  if (alpha.dim() != p.dim()) throw DegreeError("pairing of different dimensions");
  // Each increasing tuple stands for p! equal terms of the full contraction.
  double sum = 0.0;
  auto a = alpha.essential();
  auto b = p.essential();
  for (std::size_t r = 0; r < a.size(); ++r) sum += a[r] * b[r];
  return sum;
}

FormSample interior_product(const Vector& x_vec, const FormSample& alpha) {
  if (alpha.degree() == 0) throw DegreeError("interior product of a 0-form");
  const int dim = alpha.dim();
  if (x_vec.size() != dim) throw DegreeError("vector length != form dimension");
  FormSample out(dim, alpha.degree() - 1);
  if (alpha.exceeds_dimension()) return out;
  const auto& tuples = detail::combinations(dim, alpha.degree() - 1);
  auto eo = out.essential();
  std::vector<int> idx(alpha.degree());
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    double sum = 0.0;
    for (int j = 0; j < dim; ++j) {
      if (x_vec[j] == 0.0) continue;
      idx[0] = j;
      std::copy(tuples[r].begin(), tuples[r].end(), idx.begin() + 1);
      sum += x_vec[j] * alpha(idx);
    }
    eo[r] = sum;
  }
  return out;
}

FormSample interior_product(const VectorField& x_field, const FormSample& alpha, const PhasePoint& x) {
  return interior_product(x_field(x), alpha);
}

Matrix jacobian(const VectorField& f, const PhasePoint& x, FiniteDifference fd) {
  return central_difference(f, x, fd, "vector field");
}

Vector gradient(const ScalarField& f, const PhasePoint& x, FiniteDifference fd) {
  auto wrapped = [&f](const PhasePoint& y) {
    Vector v(1);
    v[0] = f(y);
    return v;
  };
  return central_difference(wrapped, x, fd, "scalar field").row(0).transpose();
}

FormSample exterior_derivative(const FormField& alpha, int degree, const PhasePoint& x, FiniteDifference fd) {
  const int dim = x.dim();
  if (degree < 0 || degree >= dim) throw DegreeError("exterior derivative needs 0 <= p < 2n");
  auto components = [&](const PhasePoint& y) {
    FormSample s = alpha(y);
    if (s.degree() != degree || s.dim() != dim) throw DegreeError("form field returned wrong shape");
    return essential_vector(s);
  };
  const Matrix d = central_difference(components, x, fd, "form field");
  FormSample out(dim, degree + 1);
  const auto& tuples = detail::combinations(dim, degree + 1);
  auto eo = out.essential();
  std::vector<int> rest(degree);
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    const auto& k = tuples[r];
    double sum = 0.0;
    for (int s = 0; s <= degree; ++s) {
      int m = 0;
      for (int t = 0; t <= degree; ++t) {
        if (t != s) rest[m++] = k[t];
      }
      const double term = d(static_cast<Eigen::Index>(detail::combination_rank(rest)), k[s]);
      sum += (s % 2 == 0) ? term : -term;
    }
    eo[r] = sum;
  }
  return out;
}

Vector lie_bracket(const VectorField& x_field, const VectorField& y_field, const PhasePoint& x, FiniteDifference fd) {
  const Matrix jx = jacobian(x_field, x, fd);
  const Matrix jy = jacobian(y_field, x, fd);
  return jy * x_field(x) - jx * y_field(x);
}

double lie_derivative_scalar(const VectorField& x_field, const ScalarField& f, const PhasePoint& x, FiniteDifference fd) {
  return x_field(x).dot(gradient(f, x, fd));
}

FormSample lie_derivative_form(const VectorField& x_field, const FormField& alpha, int degree, const PhasePoint& x,
                               FiniteDifference fd) {
  const int dim = x.dim();
  FormSample out(dim, degree);
  const Vector xv = x_field(x);
  if (xv.isZero(0.0)) return out;
  if (degree < dim) out += interior_product(xv, exterior_derivative(alpha, degree, x, fd));
  if (degree >= 1) {
    FormField contracted = [&](const PhasePoint& y) { return interior_product(x_field(y), alpha(y)); };
    out += exterior_derivative(contracted, degree - 1, x, fd);
  }
  return out;
}

MultivectorSample lie_derivative_multivector(const VectorField& x_field, const BivectorField& w, const PhasePoint& x,
                                             FiniteDifference fd) {
  const int dim = x.dim();
  const Vector xv = x_field(x);
  if (xv.isZero(0.0)) return MultivectorSample(dim, 2);
  auto components = [&](const PhasePoint& y) {
    MultivectorSample s = w(y);
    if (s.degree() != 2 || s.dim() != dim) throw DegreeError("bivector field returned wrong shape");
    return essential_vector(s);
  };
  const Matrix dw = central_difference(components, x, fd, "bivector field");
  const Matrix jx = jacobian(x_field, x, fd);
  const Matrix wm = w(x).to_matrix();
  const Vector transport = dw * xv;
  Matrix result = -(jx * wm + wm * jx.transpose());
  for (int j = 1; j < dim; ++j) {
    for (int i = 0; i < j; ++i) {
      const int idx[2] = {i, j};
      const double t = transport[static_cast<Eigen::Index>(detail::combination_rank(idx))];
      result(i, j) += t;
      result(j, i) -= t;
    }
  }
  // Antisymmetric up to round-off; symmetrize before storing.
  result = 0.5 * (result - result.transpose()).eval();
  return MultivectorSample::from_matrix(result);
}

FormField constant_form(FormSample sample) {
  return [s = std::move(sample)](const PhasePoint&) { return s; };
}

BivectorField constant_bivector(MultivectorSample sample) {
  return [s = std::move(sample)](const PhasePoint&) { return s; };
}

}  // namespace nonnoether
