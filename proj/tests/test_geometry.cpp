#include <doctest.h>

#include <cmath>
#include <random>

#include "nonnoether/geometry.hpp"
#include "oracles.hpp"

using namespace nonnoether;

namespace {

oracle::Tensor to_tensor(const FormSample& s) {
  oracle::Tensor t(s.dim(), s.degree());
  t.for_each_index([&](const std::vector<int>& idx, std::size_t flat) { t.data[flat] = s(idx); });
  return t;
}

template <Variance V>
AntisymmetricSample<V> random_sample(int dim, int degree, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  AntisymmetricSample<V> s(dim, degree);
  for (double& v : s.essential()) v = u(rng);
  return s;
}

// Random smooth 1-form: alpha_i = a_i sin(b_i . x) + c_i x_i x_{i+1} + d_i.
FormField random_one_form(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix b(dim, dim);
  Vector a(dim), c(dim), d(dim);
  for (int i = 0; i < dim; ++i) {
    a[i] = u(rng);
    c[i] = u(rng);
    d[i] = u(rng);
    for (int j = 0; j < dim; ++j) b(i, j) = u(rng);
  }
  return [=](const PhasePoint& x) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) {
      v[i] = a[i] * std::sin(b.row(i).dot(x.coords())) + c[i] * x[i] * x[(i + 1) % dim] + d[i];
    }
    return FormSample::from_vector(v);
  };
}

VectorField random_quadratic_field(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix lin(dim, dim);
  std::vector<Matrix> quad(dim, Matrix(dim, dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      lin(i, j) = u(rng);
      for (int k = 0; k < dim; ++k) quad[i](j, k) = u(rng);
    }
  return [=](const PhasePoint& x) {
    Vector v = lin * x.coords();
    for (int i = 0; i < dim; ++i) v[i] += x.coords().dot(quad[i] * x.coords());
    return v;
  };
}

PhasePoint random_point(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = u(rng);
  return PhasePoint(v);
}

}  // namespace

TEST_CASE("phase point invariants") {
  CHECK_THROWS_AS(PhasePoint({1.0, 2.0, 3.0}), StructureError);
  CHECK_THROWS_AS(PhasePoint(Vector::Zero(0)), StructureError);
  CHECK_THROWS_AS(PhasePoint({1.0, std::nan("")}), NumericalDomainError);
  CHECK(PhasePoint({0.3, 0.5}).dim() == 2);
}

TEST_CASE("jacobian examples") {
  const PhasePoint x{0.3, 0.5};
  const Matrix j = jacobian([](const PhasePoint& y) { return Vector{{y[1], -y[0]}}; }, x);
  CHECK(j(0, 0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::abs(j(0, 1) - 1.0) <= 1e-9);
  CHECK(std::abs(j(1, 0) + 1.0) <= 1e-9);
  CHECK(std::abs(j(1, 1)) <= 1e-9);

  const Vector g = gradient([](const PhasePoint& y) { return y[0] * y[0]; }, PhasePoint{2.0, 0.0});
  CHECK(std::abs(g[0] - 4.0) <= 1e-7);
  CHECK(std::abs(g[1]) <= 1e-7);

  const Matrix s = jacobian([](const PhasePoint& y) { return Vector{{std::sin(y[0]), 0.0}}; }, PhasePoint{0.0, 0.0});
  CHECK(std::abs(s(0, 0) - 1.0) <= 1e-9);
  CHECK(s.cwiseAbs().sum() - std::abs(s(0, 0)) <= 1e-9);
}

TEST_CASE("non-finite stencil values are rejected") {
  const ScalarField f = [](const PhasePoint& y) { return std::log(y[0]); };
  CHECK_THROWS_AS(gradient(f, PhasePoint{0.0, 1.0}), NumericalDomainError);
}

TEST_CASE("exterior derivative examples") {
  const PhasePoint x{0.4, -0.2};
  const FormField alpha = [](const PhasePoint& y) { return FormSample::from_vector(Vector{{0.0, y[0]}}); };
  const FormSample d = exterior_derivative(alpha, 1, x);
  CHECK(d.degree() == 2);
  CHECK(std::abs(d.at({0, 1}) - 1.0) <= 1e-9);
  CHECK(d.at({1, 0}) == -d.at({0, 1}));

  const FormField df = [](const PhasePoint& y) { return FormSample::from_vector(Vector{{y[1], y[0]}}); };
  CHECK(exterior_derivative(df, 1, x).max_abs() <= 1e-7);

  const FormSample omega = FormSample::from_matrix(oracle::canonical(2));
  CHECK(exterior_derivative(constant_form(omega), 2, PhasePoint{0.1, 0.2, 0.3, 0.4}).max_abs() == 0.0);

  CHECK_THROWS_AS(exterior_derivative(constant_form(omega), 4, PhasePoint{0.1, 0.2, 0.3, 0.4}), DegreeError);
}

TEST_CASE("interior product examples") {
  const FormSample vol = FormSample::basis(2, {0, 1});
  const Vector a = interior_product(Vector{{1.0, 0.0}}, vol).to_vector();
  CHECK(a[0] == 0.0);
  CHECK(a[1] == 1.0);
  CHECK(interior_product(Vector{{0.0, 0.0}}, vol).max_abs() == 0.0);
  const Vector b = interior_product(Vector{{0.7, -1.3}}, vol).to_vector();
  CHECK(b[0] == doctest::Approx(1.3));
  CHECK(b[1] == doctest::Approx(0.7));
  CHECK_THROWS_AS(interior_product(Vector{{1.0, 0.0}}, FormSample::scalar(2, 1.0)), DegreeError);
}

TEST_CASE("wedge examples") {
  const FormSample dx1 = FormSample::basis(2, {0});
  const FormSample dx2 = FormSample::basis(2, {1});
  const FormSample w = wedge(dx1, dx2);
  CHECK(w.at({0, 1}) == 1.0);
  CHECK(w.at({1, 0}) == -1.0);
  CHECK(wedge(dx1, dx1).max_abs() == 0.0);

  const FormSample top = wedge(FormSample::basis(4, {0, 1}), FormSample::basis(4, {2, 3}));
  CHECK(top.at({0, 1, 2, 3}) == 1.0);
  CHECK(top.at({1, 0, 2, 3}) == -1.0);

  const FormSample over = wedge(FormSample::basis(2, {0, 1}), dx1);
  CHECK(over.exceeds_dimension());
  CHECK(over.max_abs() == 0.0);
}

TEST_CASE("pairing examples") {
  CHECK(pairing(FormSample::basis(2, {0, 1}), MultivectorSample::basis(2, {0, 1})) == 1.0);
  CHECK(pairing(FormSample::basis(2, {0, 1}), MultivectorSample::basis(2, {1, 0})) == -1.0);
  const Matrix omega = oracle::canonical(2);
  // Both contract to the same brute-force sum over all index pairs / 2!.
  const double with_omega = pairing(FormSample::from_matrix(omega), MultivectorSample::from_matrix(omega));
  const double with_inverse = pairing(FormSample::from_matrix(omega), MultivectorSample::from_matrix(omega.inverse()));
  CHECK(with_omega == doctest::Approx(oracle::pairing(oracle::from_matrix(omega), oracle::from_matrix(omega))));
  CHECK(with_omega == doctest::Approx(2.0));
  CHECK(with_inverse == doctest::Approx(-2.0));
  CHECK_THROWS_AS(pairing(FormSample::basis(2, {0}), MultivectorSample::basis(2, {0, 1})), DegreeError);
}

TEST_CASE("wedge and pairing agree with the permutation oracle") {
  std::mt19937_64 rng(7);
  for (int dim : {2, 3, 4}) {
    for (int p = 0; p <= 2; ++p) {
      for (int q = 0; q <= 2 && p + q <= std::min(dim, 4); ++q) {
        for (int trial = 0; trial < 5; ++trial) {
          const auto a = random_sample<Variance::covariant>(dim, p, rng);
          const auto b = random_sample<Variance::covariant>(dim, q, rng);
          const auto pa = random_sample<Variance::contravariant>(dim, p, rng);
          const auto pb = random_sample<Variance::contravariant>(dim, q, rng);
          const oracle::Tensor ta = to_tensor(a), tb = to_tensor(b);
          const oracle::Tensor tw = oracle::wedge(ta, tb);
          const FormSample w = wedge(a, b);
          double worst = 0.0;
          tw.for_each_index([&](const std::vector<int>& idx, std::size_t flat) {
            worst = std::max(worst, std::abs(w(idx) - tw.data[flat]));
          });
          CHECK(worst <= 1e-12);

          const auto pw = wedge(pa, pb);
          oracle::Tensor tpw(dim, p + q);
          tpw.for_each_index([&](const std::vector<int>& idx, std::size_t flat) { tpw.data[flat] = pw(idx); });
          const double expected = oracle::pairing(tw, oracle::wedge([&] {
            oracle::Tensor t(dim, p);
            t.for_each_index([&](const std::vector<int>& idx, std::size_t f) { t.data[f] = pa(idx); });
            return t;
          }(), [&] {
            oracle::Tensor t(dim, q);
            t.for_each_index([&](const std::vector<int>& idx, std::size_t f) { t.data[f] = pb(idx); });
            return t;
          }()));
          CHECK(std::abs(pairing(w, pw) - expected) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("wedge is associative and graded commutative") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_sample<Variance::covariant>(5, 1, rng);
    const auto b = random_sample<Variance::covariant>(5, 2, rng);
    const auto c = random_sample<Variance::covariant>(5, 1, rng);
    CHECK((wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).max_abs() <= 1e-12);
    CHECK((wedge(a, c) + wedge(c, a)).max_abs() <= 1e-12);
    CHECK((wedge(a, b) - wedge(b, a)).max_abs() <= 1e-12);
  }
}

TEST_CASE("antisymmetric construction") {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  CHECK_THROWS_AS(FormSample::from_matrix(m), StructureError);
  CHECK_THROWS_AS(FormSample(kMaxPhaseDim + 2, 1), CapacityError);
  const FormSample s = FormSample::from_matrix(oracle::canonical(3));
  CHECK(s.to_matrix() == oracle::canonical(3));
}

TEST_CASE("lie bracket examples") {
  const VectorField x1 = [](const PhasePoint& y) { return Vector{{y[0], 0.0}}; };
  const VectorField ex = [](const PhasePoint&) { return Vector{{1.0, 0.0}}; };
  const Vector b = lie_bracket(x1, ex, PhasePoint{2.0, 0.0});
  CHECK(std::abs(b[0] + 1.0) <= 1e-9);
  CHECK(std::abs(b[1]) <= 1e-9);

  std::mt19937_64 rng(3);
  const VectorField f = random_quadratic_field(2, rng);
  CHECK(lie_bracket(f, f, PhasePoint{0.3, -0.4}).cwiseAbs().maxCoeff() <= 1e-9);

  const VectorField rot = [](const PhasePoint& y) { return Vector{{y[1], -y[0]}}; };
  const VectorField scale = [](const PhasePoint& y) { return Vector{{y[0], y[1]}}; };
  CHECK(lie_bracket(rot, scale, PhasePoint{0.7, -0.1}).cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("lie derivative of forms") {
  const FormField omega = constant_form(FormSample::basis(2, {0, 1}));
  const VectorField xh = [](const PhasePoint& y) { return Vector{{y[1], -y[0]}}; };
  CHECK(lie_derivative_form(xh, omega, 2, PhasePoint{0.4, 0.9}).max_abs() <= 1e-6);

  const VectorField scale = [](const PhasePoint& y) { return Vector{{y[0], y[1]}}; };
  const FormSample l = lie_derivative_form(scale, omega, 2, PhasePoint{0.4, 0.9});
  CHECK(std::abs(l.at({0, 1}) - 2.0) <= 1e-7);

  const VectorField zero = [](const PhasePoint&) { return Vector::Zero(2); };
  const FormField wild = [](const PhasePoint& y) {
    return FormSample::from_matrix(Matrix{{0.0, std::exp(y[0])}, {-std::exp(y[0]), 0.0}});
  };
  CHECK(lie_derivative_form(zero, wild, 2, PhasePoint{0.4, 0.9}).max_abs() == 0.0);
}

TEST_CASE("lie derivative of bivectors") {
  const Matrix w = oracle::canonical(1).inverse();
  const BivectorField wf = constant_bivector(MultivectorSample::from_matrix(w));
  const VectorField xh = [](const PhasePoint& y) { return Vector{{y[1], -y[0]}}; };
  CHECK(lie_derivative_multivector(xh, wf, PhasePoint{0.4, 0.9}).max_abs() <= 1e-6);

  const VectorField zero = [](const PhasePoint&) { return Vector::Zero(2); };
  CHECK(lie_derivative_multivector(zero, wf, PhasePoint{0.4, 0.9}).max_abs() == 0.0);

  const VectorField scale = [](const PhasePoint& y) { return Vector{{y[0], y[1]}}; };
  const Matrix l = lie_derivative_multivector(scale, wf, PhasePoint{0.4, 0.9}).to_matrix();
  CHECK((l + 2.0 * w).cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("property: d(d alpha) = 0 on random one-forms") {
  std::mt19937_64 rng(2024);
  for (int dim : {2, 4}) {
    for (int form = 0; form < 5; ++form) {
      const FormField alpha = random_one_form(dim, rng);
      const FormField d_alpha = [&](const PhasePoint& y) { return exterior_derivative(alpha, 1, y); };
      double worst = 0.0;
      for (int i = 0; i < 100; ++i) {
        const PhasePoint x = random_point(dim, rng);
        if (dim > 2) {
          worst = std::max(worst, exterior_derivative(d_alpha, 2, x).max_abs());
        } else {
          // d alpha is a top form on a 2-dimensional space; d(df) = 0 still applies.
          const ScalarField f = [&](const PhasePoint& y) { return std::sin(y[0] * y[1]) + y[0] * alpha(y).at({0}); };
          const FormField df = [&](const PhasePoint& y) { return FormSample::from_vector(gradient(f, y)); };
          worst = std::max(worst, exterior_derivative(df, 1, x).max_abs());
        }
      }
      CHECK(worst <= 1e-6);
    }
  }
}

TEST_CASE("property: Cartan consistency on scalars") {
  std::mt19937_64 rng(5);
  const ScalarField f = [](const PhasePoint& y) { return std::sin(y[0]) * y[1] + y[2] * y[3] * y[3]; };
  for (int i = 0; i < 50; ++i) {
    const VectorField v = random_quadratic_field(4, rng);
    const PhasePoint x = random_point(4, rng);
    const double lf = lie_derivative_scalar(v, f, x);
    const double ixdf = interior_product(v(x), FormSample::from_vector(gradient(f, x))).at({});
    CHECK(std::abs(lf - ixdf) <= 1e-7);
  }
}

TEST_CASE("property: bracket antisymmetry and Jacobi") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    const VectorField a = random_quadratic_field(4, rng);
    const VectorField b = random_quadratic_field(4, rng);
    const VectorField c = random_quadratic_field(4, rng);
    const PhasePoint x = random_point(4, rng);
    CHECK((lie_bracket(a, b, x) + lie_bracket(b, a, x)).cwiseAbs().maxCoeff() <= 1e-9);
    auto br = [](VectorField p, VectorField q) {
      return VectorField([p, q](const PhasePoint& y) { return lie_bracket(p, q, y); });
    };
    const Vector jac = lie_bracket(a, br(b, c), x) + lie_bracket(b, br(c, a), x) +
                       lie_bracket(c, br(a, b), x);
    CHECK(jac.cwiseAbs().maxCoeff() <= 1e-5);
  }
}
