#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "riemdr/errors.h"
#include "riemdr/onpp.h"
#include "riemdr/pga.h"
#include "riemdr/rrpca.h"
#include "test_support.h"

namespace riemdr {
namespace {

using testing::euclidean_dataset;
using testing::sphere_point;

Matrix gaussian(Rng& rng, Index r, Index c) {
  Matrix m(r, c);
  for (Index i = 0; i < m.size(); ++i) m(i) = rng.normal();
  return m;
}

// Classical PCA through the SVD of the centered data matrix.
struct PcaOracle {
  Matrix scores;
  Vector variances;
};
PcaOracle pca_oracle(const Matrix& rows, int k) {
  const Matrix c = rows.rowwise() - rows.colwise().mean();
  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeThinV);
  const Vector s = svd.singularValues();
  return {c * svd.matrixV().leftCols(k),
          (s.head(k).array().square() / static_cast<double>(rows.rows())).matrix()};
}

/// Equal up to a sign per column.
double signed_column_gap(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    worst = std::max(worst, std::min((a.col(j) - b.col(j)).norm(),
                                     (a.col(j) + b.col(j)).norm()));
  return worst;
}

LabeledDataset great_circle(int n, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  const ManifoldSpec spec = ManifoldSpec::sphere(3);
  LabeledDataset ds{spec, {}, {}, "circle"};
  for (int i = 0; i < n; ++i) {
    const double t = rng.uniform(-1.2, 1.2);
    const double h = sigma * rng.normal();
    Matrix x(3, 1);
    x << std::cos(t) * std::cos(h), std::sin(t) * std::cos(h), std::sin(h);
    ds.points.emplace_back(spec, x / x.norm());
    ds.labels.push_back(0);
  }
  return ds;
}

TEST(Pga, EuclideanMatchesPca) {
  Rng rng(1);
  const Matrix rows = gaussian(rng, 80, 6) * gaussian(rng, 6, 6);
  const LabeledDataset ds = euclidean_dataset(rows, std::vector<int>(80, 0));
  const PgaModel m = pga_fit(ds, 3);
  const PcaOracle o = pca_oracle(rows, 3);
  EXPECT_LT((m.eigenvalues - o.variances).norm(), 1e-8);
  EXPECT_LT(signed_column_gap(pga_transform(m, ds.points), o.scores), 1e-8);
  EXPECT_LT((m.basis.transpose() * m.basis - Matrix::Identity(3, 3)).norm(), 1e-8);
}

TEST(Pga, NoiselessGreatCircleIsOneDimensional) {
  const LabeledDataset ds = great_circle(100, 0.0, 2);
  const PgaModel m = pga_fit(ds, 2);
  EXPECT_LE(m.eigenvalues(1) / m.eigenvalues(0), 1e-8);
}

TEST(Pga, SinglePointHasZeroSpectrum) {
  const LabeledDataset ds{ManifoldSpec::sphere(3), {sphere_point({0, 1, 0})}, {0}, "one"};
  const PgaModel m = pga_fit(ds, 2);
  EXPECT_EQ(m.eigenvalues, Vector::Zero(2));
  EXPECT_EQ(pga_transform(m, ds.points), Matrix::Zero(1, 2));
}

TEST(Pga, RejectsBadK) {
  const LabeledDataset ds = great_circle(10, 0.1, 3);
  EXPECT_THROW(pga_fit(ds, 0), InvalidArgument);
  EXPECT_THROW(pga_fit(ds, 4), InvalidArgument);
}

TEST(Pga, FullBasisRoundtrip) {
  for (const ManifoldSpec& spec : {ManifoldSpec::sphere(4), ManifoldSpec::spd(2)}) {
    Rng rng(4);
    const Point c = random_point(spec, rng);
    LabeledDataset ds{spec, {}, {}, "cloud"};
    for (int i = 0; i < 30; ++i) {
      ds.points.push_back(exp_map(c, random_tangent(c, rng, 0.8 * rng.uniform())));
      ds.labels.push_back(0);
    }
    const PgaModel m = pga_fit(ds, spec.vec_dim());
    const std::vector<Point> back = pga_reconstruct(m, pga_transform(m, ds.points));
    for (std::size_t i = 0; i < back.size(); ++i)
      EXPECT_LE(geodesic_dist(back[i], ds.points[i]), 1e-8) << spec.to_string();
    // Zero coordinates reconstruct the base.
    const auto at_base = pga_reconstruct(m, Matrix::Zero(2, spec.vec_dim()));
    EXPECT_LT((at_base[1].data() - m.base.data()).norm(), 1e-14);
  }
}

TEST(Pga, RankOneReconstructionWithinNoise) {
  const double sigma = 0.05;
  const LabeledDataset ds = great_circle(300, sigma, 5);
  const PgaModel m = pga_fit(ds, 1);
  const auto rec = pga_reconstruct(m, pga_transform(m, ds.points));
  double mean_err = 0.0;
  for (std::size_t i = 0; i < rec.size(); ++i) mean_err += geodesic_dist(rec[i], ds.points[i]);
  mean_err /= static_cast<double>(rec.size());
  EXPECT_LT(mean_err, sigma);
}

TEST(Pga, CapturedVarianceMonotone) {
  const LabeledDataset ds = testing::sphere_cloud(6, 50, 1.0, 6);
  const Matrix cov = tangent_covariance(lift(ds.points, frechet_mean(ds.points)));
  double prev = -1.0;
  for (int k = 1; k <= 6; ++k) {
    const PgaModel m = pga_fit(ds, k);
    const double captured = m.eigenvalues.sum();
    EXPECT_GE(captured, prev - 1e-15);
    prev = captured;
    for (Index i = 1; i < m.eigenvalues.size(); ++i)
      EXPECT_GE(m.eigenvalues(i - 1), m.eigenvalues(i));
  }
  EXPECT_NEAR(prev, cov.trace(), 1e-8);
}

TEST(Rpca, ExactRankOneNoCorruption) {
  Rng rng(7);
  const Matrix z = gaussian(rng, 20, 1) * gaussian(rng, 1, 40);
  const RpcaDecomposition d = rpca_decompose(z);
  EXPECT_LE((d.low_rank - z).norm(), 1e-6 * z.norm());
  EXPECT_LE(d.sparse.norm(), 1e-6 * z.norm());
}

TEST(Rpca, ZeroInput) {
  const RpcaDecomposition d = rpca_decompose(Matrix::Zero(5, 8));
  EXPECT_EQ(d.low_rank, Matrix::Zero(5, 8));
  EXPECT_EQ(d.sparse, Matrix::Zero(5, 8));
  EXPECT_EQ(d.residual, 0.0);
}

TEST(Rpca, PlantedRecoveryAndConstraint) {
  Rng rng(8);
  const Matrix l = gaussian(rng, 50, 3) * gaussian(rng, 3, 200);
  Matrix s = Matrix::Zero(50, 200);
  for (int c = 0; c < 500; ++c) {
    const auto i = static_cast<Index>(rng.below(50)), j = static_cast<Index>(rng.below(200));
    s(i, j) = rng.uniform() < 0.5 ? -10.0 : 10.0;
  }
  const Matrix z = l + s;
  const RpcaDecomposition d = rpca_decompose(z, 1.0 / std::sqrt(200.0), 50);
  EXPECT_LT((d.low_rank - l).norm() / l.norm(), 1e-3);
  EXPECT_LE((z - d.low_rank - d.sparse).norm() / z.norm(), 1e-6);
  EXPECT_EQ(d.iterations, 50);
}

TEST(Rrpca, CleanedPointsOnManifold) {
  const LabeledDataset ds = testing::sphere_cloud(5, 40, 0.8, 9);
  const RrpcaResult r = rrpca_fit(ds);
  ASSERT_EQ(r.cleaned_points.size(), ds.size());
  for (const Point& p : r.cleaned_points) EXPECT_NO_THROW(validate_point(ds.spec, p.data()));
  EXPECT_EQ(r.low_rank.cols(), 40);
  const PgaModel proj = rrpca_projection(r, 2);
  EXPECT_LT((proj.basis.transpose() * proj.basis - Matrix::Identity(2, 2)).norm(), 1e-10);
}

TEST(OnppWeights, SymmetricPair) {
  Matrix z(2, 2);
  z << 1, -1, 0, 0;
  const Vector w = reconstruction_weights(z, 2);
  EXPECT_NEAR(w(0), 0.5, 1e-12);
  EXPECT_NEAR(w(1), 0.5, 1e-12);
  EXPECT_NEAR((z * w).norm(), 0.0, 1e-12);
}

TEST(OnppWeights, SingleNeighbor) {
  Matrix z(3, 1);
  z << 0.3, -2, 1;
  EXPECT_EQ(reconstruction_weights(z, 3)(0), 1.0);
}

TEST(OnppWeights, DegenerateNeighborhood) {
  EXPECT_THROW(reconstruction_weights(Matrix::Zero(3, 2), 3), DegenerateNeighborhood);
}

// Independent oracle: the KKT system of min w^T G w s.t. 1^T w = 1.
Vector lle_oracle(const Matrix& z) {
  const Index k = z.cols();
  Matrix kkt = Matrix::Zero(k + 1, k + 1);
  kkt.topLeftCorner(k, k) = 2.0 * z.transpose() * z;
  kkt.topRightCorner(k, 1).setOnes();
  kkt.bottomLeftCorner(1, k).setOnes();
  Vector rhs = Vector::Zero(k + 1);
  rhs(k) = 1.0;
  return kkt.fullPivLu().solve(rhs).head(k);
}

TEST(OnppWeights, EuclideanMatchesLle) {
  Rng rng(10);
  const Matrix rows = gaussian(rng, 40, 6);
  const LabeledDataset ds = euclidean_dataset(rows, std::vector<int>(40, 0));
  const int k = 4;
  const SparseMatrix w = onpp_weights(ds, k);
  const Matrix dense = Matrix(w);
  for (Index i = 0; i < 40; ++i) {
    std::vector<Index> nb;
    for (Index j = 0; j < 40; ++j)
      if (dense(i, j) != 0.0) nb.push_back(j);
    ASSERT_EQ(nb.size(), static_cast<std::size_t>(k));
    Matrix z(6, k);
    for (int j = 0; j < k; ++j) z.col(j) = (rows.row(nb[j]) - rows.row(i)).transpose();
    const Vector o = lle_oracle(z);
    for (int j = 0; j < k; ++j) EXPECT_NEAR(dense(i, nb[j]), o(j), 1e-8);
    EXPECT_NEAR(dense.row(i).sum(), 1.0, 1e-10);
    EXPECT_EQ(dense(i, i), 0.0);
  }
}

TEST(OnppWeights, RowsSumToOneOnSphere) {
  const LabeledDataset ds = testing::sphere_cloud(4, 60, 1.0, 11);
  const Matrix w = Matrix(onpp_weights(ds, 8));
  for (Index i = 0; i < w.rows(); ++i) EXPECT_NEAR(w.row(i).sum(), 1.0, 1e-10);
}

TEST(Onpp, MatchesEigenOracle) {
  Rng rng(12);
  const Matrix rows = gaussian(rng, 60, 8) * gaussian(rng, 8, 8);
  const LabeledDataset ds = euclidean_dataset(rows, std::vector<int>(60, 0));
  const OnppModel m = onpp_fit(ds, 2, 6);
  const Matrix x = lift(ds.points, m.base).vectors;
  const Matrix a = onpp_quadratic_form(x, m.weights);
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  EXPECT_LT(testing::subspace_distance(m.projection, es.eigenvectors().leftCols(2)), 1e-4);
  EXPECT_LT((m.projection.transpose() * m.projection - Matrix::Identity(2, 2)).norm(), 1e-8);
  for (std::size_t t = 1; t < m.objective_trace.size(); ++t)
    EXPECT_LE(m.objective_trace[t], m.objective_trace[t - 1] + 1e-12);
  EXPECT_LE(m.objective_trace.back(), m.objective_trace.front());
  EXPECT_EQ(onpp_transform(m, ds.points).cols(), 2);
}

TEST(Onpp, QuadraticFormZeroForExactReconstruction) {
  Matrix x(1, 3);
  x << 0, 1, 2;
  // Point 1 is the midpoint of 0 and 2; the ends extrapolate.
  Matrix wd(3, 3);
  wd << 0, 2, -1, 0.5, 0, 0.5, -1, 2, 0;
  EXPECT_LT(onpp_quadratic_form(x, wd.sparseView()).norm(), 1e-15);
}

TEST(Onpp, SphereDataStaysInTangentSpan) {
  const LabeledDataset ds = testing::sphere_cloud(10, 80, 0.9, 13);
  const OnppModel m = onpp_fit(ds, 3, 8);
  // Columns are tangent at the base.
  EXPECT_LT((m.base.data().transpose() * m.projection).norm(), 1e-10);
}

}  // namespace
}  // namespace riemdr
