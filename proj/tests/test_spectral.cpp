#include <gtest/gtest.h>

#include "riemdr/errors.h"
#include "riemdr/rng.h"
#include "riemdr/spectral.h"
#include "test_support.h"

namespace riemdr {
namespace {

Matrix random_matrix(Rng& rng, Index r, Index c) {
  Matrix m(r, c);
  for (Index i = 0; i < m.size(); ++i) m(i) = rng.normal();
  return m;
}

Matrix random_symmetric(Rng& rng, Index n) {
  const Matrix a = random_matrix(rng, n, n);
  return a + a.transpose();
}

TEST(SymEig, Diagonal) {
  const EigPair e = sym_eig(Matrix(Eigen::Vector3d(3, 1, 2).asDiagonal()));
  EXPECT_EQ(e.values, Eigen::Vector3d(3, 2, 1));
  Matrix perm = Matrix::Zero(3, 3);
  perm(0, 0) = perm(2, 1) = perm(1, 2) = 1.0;
  EXPECT_LT((e.vectors - perm).norm(), 1e-14);
}

TEST(SymEig, IdentityAndRankOne) {
  EXPECT_EQ(sym_eig(Matrix::Identity(4, 4)).values, Vector::Ones(4));
  Vector z(3);
  z << 0.6, 0.0, -0.8;
  const EigPair e = sym_eig(z * z.transpose());
  EXPECT_NEAR(e.values(0), 1.0, 1e-14);
  EXPECT_NEAR(e.values.tail(2).norm(), 0.0, 1e-14);
  // Sign convention: the largest-|entry| coordinate is positive.
  EXPECT_LT((e.vectors.col(0) + z).norm(), 1e-14);
}

TEST(SymEig, NotSymmetric) {
  Matrix a(2, 2);
  a << 1, 2, 0, 1;
  EXPECT_THROW(sym_eig(a), NotSymmetric);
}

TEST(SymEig, ReconstructionProperty) {
  Rng rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = random_symmetric(rng, 50);
    const EigPair e = sym_eig(a);
    EXPECT_LE((a - e.vectors * e.values.asDiagonal() * e.vectors.transpose()).norm(),
              1e-7 * a.norm());
    EXPECT_LE((e.vectors.transpose() * e.vectors - Matrix::Identity(50, 50)).norm(), 1e-8);
    for (Index i = 1; i < 50; ++i) EXPECT_GE(e.values(i - 1), e.values(i));
    for (Index j = 0; j < 50; ++j) {
      Index arg;
      e.vectors.col(j).cwiseAbs().maxCoeff(&arg);
      EXPECT_GT(e.vectors(arg, j), 0.0);
    }
  }
}

TEST(GenEig, Examples) {
  Rng rng(2);
  const Matrix a = random_symmetric(rng, 6);
  EXPECT_LT((gen_eig(a, Matrix::Identity(6, 6)).values - sym_eig(a).values).norm(), 1e-9);

  const EigPair top = gen_eig(Matrix(Eigen::Vector2d(4, 0).asDiagonal()),
                              Matrix::Identity(2, 2));
  EXPECT_NEAR(top.values(0), 4.0, 1e-7);
  EXPECT_NEAR(std::abs(top.vectors(0, 0)), 1.0, 1e-7);

  // B^{-1/2} A B^{-1/2} = diag(2, 1).
  const EigPair e = gen_eig(Matrix(Eigen::Vector2d(2, 2).asDiagonal()),
                            Matrix(Eigen::Vector2d(1, 2).asDiagonal()));
  EXPECT_NEAR(e.values(0), 2.0, 1e-7);
  EXPECT_NEAR(e.values(1), 1.0, 1e-7);
}

TEST(GenEig, BOrthonormalAndSolves) {
  Rng rng(3);
  const Matrix a = random_symmetric(rng, 8);
  const Matrix g = random_matrix(rng, 8, 8);
  const Matrix b = g * g.transpose() + Matrix::Identity(8, 8);
  const EigPair e = gen_eig(a, b);
  EXPECT_LT((e.vectors.transpose() * b * e.vectors - Matrix::Identity(8, 8)).norm(), 1e-6);
  EXPECT_LT((a * e.vectors - b * e.vectors * e.values.asDiagonal()).norm(), 1e-10 * a.norm());
}

TEST(GenEig, RankDeficientBIsShifted) {
  // eps = 1e-8 tr(B) / dim = 5e-9.
  const EigPair e = gen_eig(Matrix::Identity(2, 2), Matrix(Eigen::Vector2d(1, 0).asDiagonal()));
  EXPECT_NEAR(e.values(0), 2e8, 1e-2);
  EXPECT_NEAR(e.values(1), 1.0 / (1.0 + 5e-9), 1e-15);
}

TEST(GenEig, NotPositiveDefinite) {
  EXPECT_THROW(gen_eig(Matrix::Identity(2, 2), Matrix(Eigen::Vector2d(1, -3).asDiagonal())),
               NotPositiveDefinite);
}

TEST(Svt, Examples) {
  const Matrix m = Eigen::Vector2d(3, 1).asDiagonal();
  EXPECT_LT((svt(m, 1.0) - Matrix(Eigen::Vector2d(2, 0).asDiagonal())).norm(), 1e-14);
  EXPECT_LT((svt(m, 0.0) - m).norm(), 1e-14);
  EXPECT_EQ(svt(m, 3.0), Matrix::Zero(2, 2));
}

TEST(Svt, NonExpansiveAndRankReducing) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = random_matrix(rng, 7, 5), n = random_matrix(rng, 7, 5);
    const double tau = 2.0 * rng.uniform();
    EXPECT_LE((svt(m, tau) - svt(n, tau)).norm(), (m - n).norm() + 1e-12);
    Eigen::JacobiSVD<Matrix> a(m), b(svt(m, tau));
    a.setThreshold(1e-10);
    b.setThreshold(1e-10);
    EXPECT_LE(b.rank(), a.rank());
  }
}

TEST(Shrink, Examples) {
  Matrix m(1, 3);
  m << 2.5, -0.5, -3.0;
  Matrix expect(1, 3);
  expect << 1.5, 0.0, -2.0;
  EXPECT_EQ(shrink(m, 1.0), expect);
  EXPECT_EQ(shrink(m, 0.0), m);
}

// shrink is the proximal map of tau |.|: compare with a fine grid search
// of the scalar objective.
TEST(Shrink, ProximalProperty) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const double m = 4.0 * rng.normal(), tau = rng.uniform(0.0, 3.0);
    Matrix mm(1, 1);
    mm(0, 0) = m;
    const double s = shrink(mm, tau)(0, 0);
    const auto f = [&](double x) { return tau * std::abs(x) + 0.5 * (x - m) * (x - m); };
    for (double x = -20.0; x <= 20.0; x += 0.01) ASSERT_LE(f(s), f(x) + 1e-12);
  }
}

}  // namespace
}  // namespace riemdr
