#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "riemdr/errors.h"
#include "riemdr/frechet.h"
#include "riemdr/log.h"
#include "test_support.h"

namespace riemdr {
namespace {

using testing::sphere_point;
using testing::vec3;

double objective(std::span<const Point> pts, const Point& x) {
  double s = 0.0;
  for (const Point& p : pts) s += std::pow(geodesic_dist(x, p), 2);
  return s;
}

TEST(FrechetMean, SphereMidpoint) {
  const std::vector<Point> pts{sphere_point({1, 0, 0}), sphere_point({0, 1, 0})};
  const Point m = frechet_mean(pts);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR((m.data() - vec3(r, r, 0)).norm(), 0.0, 1e-12);
}

TEST(FrechetMean, SinglePoint) {
  const std::vector<Point> pts{sphere_point({0, 0.6, 0.8})};
  const FrechetResult r = frechet_mean_detailed(pts);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_TRUE(r.converged);
  EXPECT_LT((r.mean.data() - pts[0].data()).norm(), 1e-15);
}

TEST(FrechetMean, EuclideanArithmeticMean) {
  const ManifoldSpec spec = ManifoldSpec::euclidean(3);
  const std::vector<Point> pts{Point(spec, vec3(1, 2, 3)), Point(spec, vec3(3, 0, -1)),
                               Point(spec, vec3(2, 1, 1))};
  const FrechetResult r = frechet_mean_detailed(pts);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_LT((r.mean.data() - vec3(2, 1, 1)).norm(), 1e-15);
}

TEST(FrechetMean, EmptyInputRejected) {
  EXPECT_THROW(frechet_mean(std::vector<Point>{}), InvalidArgument);
}

TEST(FrechetMean, NoConvergenceCarriesLastIterate) {
  const LabeledDataset ds = testing::sphere_cloud(5, 30, 1.0, 4);
  try {
    frechet_mean(ds.points, {1e-14, 1});
    FAIL() << "expected NoConvergence";
  } catch (const NoConvergence& e) {
    EXPECT_EQ(e.iterations(), 1);
    EXPECT_GT(e.residual(), 1e-14);
    EXPECT_NO_THROW(validate_point(ds.spec, e.last_iterate()));
  }
}

TEST(FrechetMean, HemisphereWarning) {
  std::vector<std::string> seen;
  const WarningSink prev =
      set_warning_sink([&](const std::string& m) { seen.push_back(m); });
  const std::vector<Point> pts{sphere_point({1, 0, 0}),
                               sphere_point({-0.999, std::sqrt(1 - 0.999 * 0.999), 0}),
                               sphere_point({0, 1, 0})};
  frechet_mean_detailed(pts);
  set_warning_sink(prev);
  EXPECT_FALSE(seen.empty());
}

// Properties on random sphere, SPD and Grassmann datasets.
class FrechetProperty : public ::testing::TestWithParam<ManifoldSpec> {};

TEST_P(FrechetProperty, FirstOrderConditionAndMinimality) {
  const ManifoldSpec spec = GetParam();
  Rng rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    const Point c = random_point(spec, rng);
    std::vector<Point> pts;
    for (int i = 0; i < 25; ++i)
      pts.push_back(exp_map(c, random_tangent(c, rng, 0.6 * rng.uniform())));
    const Point m = frechet_mean(pts);
    const TangentDataset td = lift(pts, m);
    const Vector g = td.vectors.rowwise().mean();
    EXPECT_LT(norm(m, TangentVec::unchecked(m, devectorize(spec, g))), 1e-6);
    const double fm = objective(pts, m);
    for (const Point& p : pts) EXPECT_LE(fm, objective(pts, p) + 1e-12);
  }
}

TEST_P(FrechetProperty, LiftThenExpRecoversPoints) {
  const ManifoldSpec spec = GetParam();
  Rng rng(78);
  const Point base = random_point(spec, rng);
  std::vector<Point> pts;
  for (int i = 0; i < 10; ++i)
    pts.push_back(exp_map(base, random_tangent(base, rng, 1.0 * rng.uniform())));
  const TangentDataset td = lift(pts, base);
  ASSERT_EQ(td.vec_dim(), spec.vec_dim());
  for (Index i = 0; i < td.size(); ++i) {
    const Matrix v = devectorize(spec, td.vectors.col(i));
    EXPECT_NO_THROW(validate_tangent(base, v));
    EXPECT_LT((exp_map(base, TangentVec(base, v)).data() - pts[i].data()).norm(), 1e-8);
  }
  const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(tangent_covariance(td))
                        .eigenvalues();
  EXPECT_GE(ev.minCoeff(), -1e-12);
}

INSTANTIATE_TEST_SUITE_P(Manifolds, FrechetProperty,
                         ::testing::Values(ManifoldSpec::sphere(3),
                                           ManifoldSpec::sphere(20),
                                           ManifoldSpec::spd(3),
                                           ManifoldSpec::grassmann(2, 5)));

TEST(Lift, Examples) {
  const Point base = sphere_point({1, 0, 0});
  const std::vector<Point> same{base};
  EXPECT_EQ(lift(same, base).vectors, Matrix::Zero(3, 1));
  const std::vector<Point> one{sphere_point({0, 1, 0})};
  EXPECT_NEAR((lift(one, base).vectors - vec3(0, std::numbers::pi / 2, 0)).norm(), 0,
              1e-15);

  const ManifoldSpec e = ManifoldSpec::euclidean(3);
  const Point b(e, vec3(1, 1, 1));
  const std::vector<Point> xs{Point(e, vec3(2, 3, 4)), Point(e, vec3(0, 0, 0))};
  Matrix expect(3, 2);
  expect << 1, -1, 2, -1, 3, -1;
  EXPECT_EQ(lift(xs, b).vectors, expect);
}

TEST(Lift, FailureNamesIndex) {
  const Point base = sphere_point({1, 0, 0});
  const std::vector<Point> pts{sphere_point({0, 1, 0}), sphere_point({-1, 0, 0})};
  try {
    lift(pts, base);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find('1'), std::string::npos);
  }
}

TEST(TangentCovariance, Examples) {
  const Point base = sphere_point({0, 0, 1});
  EXPECT_EQ(tangent_covariance({base, Matrix::Zero(3, 4)}), Matrix::Zero(3, 3));
  const Matrix z = vec3(1, 2, 0);
  EXPECT_EQ(tangent_covariance({base, z}), z * z.transpose());
  Matrix two(2, 2);
  two << 1, -1, 0, 0;
  const Point b2(ManifoldSpec::euclidean(2), Matrix::Zero(2, 1));
  EXPECT_EQ(tangent_covariance({b2, two}), Matrix(Eigen::Vector2d(1, 0).asDiagonal()));
}

}  // namespace
}  // namespace riemdr
