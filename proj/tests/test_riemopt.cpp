#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "riemdr/errors.h"
#include "riemdr/riemopt.h"
#include "test_support.h"

namespace riemdr {
namespace {

using testing::vec3;

Objective rayleigh(const Matrix& a) {
  return [a](const Matrix& x) {
    return ObjectiveEval{-(x.transpose() * a * x)(0, 0), -2.0 * a * x};
  };
}

TEST(RiemannianGrad, SphereQuadratic) {
  Matrix x(2, 1), a(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  x << r, r;
  a << 2, 0, 0, 1;
  const Point p(ManifoldSpec::sphere(2), x);
  const Matrix g = riemannian_grad(2.0 * a * x, p).data();
  EXPECT_NEAR(g(0), r, 1e-15);
  EXPECT_NEAR(g(1), -r, 1e-15);

  // Finite differences of f o Exp along Z match <grad, Z>.
  Matrix z(2, 1);
  z << -r, r;
  const auto f = [&](double t) {
    const Matrix y = exp_map(p, TangentVec(p, t * z)).data();
    return (y.transpose() * a * y)(0, 0);
  };
  const double fd = (f(1e-6) - f(-1e-6)) / 2e-6;
  EXPECT_NEAR((g.transpose() * z)(0, 0), fd, 1e-8);
}

TEST(RiemannianGrad, CriticalPointAndEuclidean) {
  const Matrix a = Eigen::Vector3d(3, 2, 1).asDiagonal();
  const Point e2 = testing::sphere_point({0, 1, 0});
  EXPECT_LT(riemannian_grad(2.0 * a * e2.data(), e2).data().norm(), 1e-15);
  const Point x(ManifoldSpec::euclidean(3), vec3(1, 2, 3));
  EXPECT_EQ(riemannian_grad(vec3(4, 5, 6), x).data(), vec3(4, 5, 6));
}

TEST(RiemannianGrad, ShapeMismatch) {
  EXPECT_THROW(riemannian_grad(Matrix::Ones(2, 1), testing::sphere_point({1, 0, 0})),
               ShapeMismatch);
}

TEST(RiemannianGradMetric, MatchesDirectionalDerivativeUnderInner) {
  Rng rng(12);
  for (const ManifoldSpec& spec : {ManifoldSpec::spd(3), ManifoldSpec::stiefel(2, 4)}) {
    const Point x = random_point(spec, rng);
    Matrix c(spec.rows(), spec.cols());
    for (Index i = 0; i < c.size(); ++i) c(i) = rng.normal();
    // f(X) = <C, X> + 0.5 ||X||^2, Euclidean gradient C + X.
    const auto f = [&](const Matrix& y) { return (c.array() * y.array()).sum() + 0.5 * y.squaredNorm(); };
    const TangentVec g = riemannian_grad_metric(c + x.data(), x);
    for (int k = 0; k < 5; ++k) {
      const TangentVec z = random_tangent(x, rng, 1.0);
      const double h = 1e-6;
      const double fd = (f(retract(x, TangentVec::unchecked(x, h * z.data())).data()) -
                         f(retract(x, TangentVec::unchecked(x, -h * z.data())).data())) /
                        (2 * h);
      EXPECT_NEAR(inner(x, g, z), fd, 1e-6) << spec.to_string();
    }
  }
}

TEST(RgdConfig, Validate) {
  EXPECT_THROW((RgdConfig{0.0}).validate(), InvalidArgument);
  EXPECT_THROW((RgdConfig{0.1, 0}).validate(), InvalidArgument);
  EXPECT_THROW((RgdConfig{0.1, 10, 0.0}).validate(), InvalidArgument);
  EXPECT_NO_THROW(RgdConfig{}.validate());
}

TEST(RgdMinimize, RayleighConvergesToTopEigenvector) {
  const Matrix a = Eigen::Vector3d(3, 2, 1).asDiagonal();
  Matrix x0(3, 1);
  x0 << 0.3, 0.8, 0.52;
  const Point p0 = project_to_manifold(ManifoldSpec::sphere(3), x0);
  const RgdTrace t = rgd_minimize(rayleigh(a), p0, {0.1, 5000, 1e-8});
  EXPECT_TRUE(t.converged);
  EXPECT_NEAR(std::abs(t.final_point.data()(0)), 1.0, 1e-12);
  EXPECT_EQ(t.grad_norms.size(), t.objective_values.size());
  EXPECT_EQ(static_cast<int>(t.grad_norms.size()), t.iterates_count);
}

TEST(RgdMinimize, CriticalStartStopsImmediately) {
  const Matrix a = Eigen::Vector3d(3, 2, 1).asDiagonal();
  const RgdTrace t = rgd_minimize(rayleigh(a), testing::sphere_point({1, 0, 0}), {});
  EXPECT_EQ(t.iterates_count, 1);
  EXPECT_LT(t.grad_norms[0], 1e-6);
}

TEST(RgdMinimize, DescentWithSmallStep) {
  const Matrix a = Eigen::Vector3d(3, 2, 1).asDiagonal();
  const Point p0 = project_to_manifold(ManifoldSpec::sphere(3), vec3(0.1, 0.5, 1.0));
  const RgdTrace t = rgd_minimize(rayleigh(a), p0, {0.05, 300, 1e-12, false, false});
  for (std::size_t i = 1; i < t.objective_values.size(); ++i)
    EXPECT_LE(t.objective_values[i], t.objective_values[i - 1] + 1e-15);
}

TEST(RgdMinimize, BacktrackingDescent) {
  Rng rng(6);
  const Matrix g = Eigen::MatrixXd::Random(6, 6);
  const Matrix a = g * g.transpose();
  const Objective f = [&](const Matrix& u) {
    return ObjectiveEval{(u.transpose() * a * u).trace(), 2.0 * a * u};
  };
  const Point u0 = random_point(ManifoldSpec::stiefel(2, 6), rng);
  const RgdTrace t = rgd_minimize(f, u0, {10.0, 200, 1e-10, true, false});
  for (std::size_t i = 1; i < t.objective_values.size(); ++i)
    EXPECT_LE(t.objective_values[i], t.objective_values[i - 1] + 1e-12);
  EXPECT_NO_THROW(validate_point(ManifoldSpec::stiefel(2, 6), t.final_point.data(), 1e-8));
}

TEST(RgdMinimize, NoConvergenceCarriesTrace) {
  const Matrix a = Eigen::Vector3d(3, 2, 1).asDiagonal();
  const Point p0 = project_to_manifold(ManifoldSpec::sphere(3), vec3(0.1, 0.5, 1.0));
  try {
    rgd_minimize(rayleigh(a), p0, {1e-3, 5, 1e-12});
    FAIL();
  } catch (const RgdNoConvergence& e) {
    EXPECT_EQ(e.trace().iterates_count, 5);
    EXPECT_EQ(e.trace().grad_norms.size(), 5u);
    EXPECT_EQ(e.iterations(), 5);
  }
}

TEST(RgdMinimize, NonFiniteObjective) {
  const Objective f = [](const Matrix& x) {
    return ObjectiveEval{std::nan(""), Matrix::Zero(x.rows(), x.cols())};
  };
  EXPECT_THROW(rgd_minimize(f, testing::sphere_point({1, 0, 0}), {}), NonFiniteObjective);
}

TEST(RgdMinimize, IteratesStayOnManifold) {
  Rng rng(21);
  const ManifoldSpec spec = ManifoldSpec::grassmann(2, 5);
  Matrix g(5, 5);
  for (Index i = 0; i < 25; ++i) g(i) = rng.normal();
  const Matrix a = g + g.transpose();
  std::vector<Matrix> seen;
  const Objective f = [&](const Matrix& u) {
    seen.push_back(u);
    return ObjectiveEval{-(u.transpose() * a * u).trace(), -2.0 * a * u};
  };
  rgd_minimize(f, random_point(spec, rng), {0.05, 200, 1e-9, false, false});
  for (const Matrix& u : seen) EXPECT_NO_THROW(validate_point(spec, u, 1e-8));
}

}  // namespace
}  // namespace riemdr
