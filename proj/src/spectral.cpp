#include "riemdr/spectral.h"

#include <cmath>
#include <sstream>

#include "riemdr/errors.h"

namespace riemdr {
namespace {

void require_symmetric(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw ShapeMismatch(std::string(what) + ": matrix is not square");
  }
  const double asym = (a - a.transpose()).norm();
  if (asym > 1e-8 * a.norm()) {
    std::ostringstream os;
    os << what << ": ||A - A^T||_F = " << asym << " exceeds 1e-8 ||A||_F";
    throw NotSymmetric(os.str());
  }
}

EigPair descending(const Eigen::SelfAdjointEigenSolver<Matrix>& es) {
  const Index n = es.eigenvalues().size();
  EigPair out{Vector(n), Matrix(es.eigenvectors().rows(), n)};
  for (Index i = 0; i < n; ++i) {
    out.values(i) = es.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

bool is_diagonal(const Matrix& b) {
  for (Index j = 0; j < b.cols(); ++j)
    for (Index i = 0; i < b.rows(); ++i)
      if (i != j && b(i, j) != 0.0) return false;
  return true;
}

}  // namespace

void normalize_signs(Matrix& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    Index arg = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, j) < 0) vectors.col(j) = -vectors.col(j);
  }
}

EigPair sym_eig(const Matrix& a) {
  require_symmetric(a, "sym_eig");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.transpose()));
  if (es.info() != Eigen::Success) {
    throw NoConvergence("sym_eig: eigensolver did not converge", 0, 0.0);
  }
  EigPair out = descending(es);
  normalize_signs(out.vectors);
  return out;
}

EigPair gen_eig(const Matrix& a, const Matrix& b) {
  require_symmetric(a, "gen_eig(A)");
  require_symmetric(b, "gen_eig(B)");
  if (a.rows() != b.rows()) throw ShapeMismatch("gen_eig: A and B differ in size");
  const Index n = b.rows();
  // Only ill-conditioned B (rank-deficient scatter) is shifted, so a
  // well-conditioned problem is solved exactly.
  const double scale = b.trace() / static_cast<double>(n);
  const double lmin =
      is_diagonal(b)
          ? b.diagonal().minCoeff()
          : Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (b + b.transpose()),
                                                  Eigen::EigenvaluesOnly)
                .eigenvalues()
                .minCoeff();
  const double eps = lmin < 1e-6 * scale ? 1e-8 * scale : 0.0;
  const Matrix sym_a = 0.5 * (a + a.transpose());

  // Whitening W with W^T B W = I, so A v = l B v becomes
  // (W^T A W) u = l u with v = W u.
  EigPair out;
  if (is_diagonal(b)) {
    Vector d = b.diagonal().array() + eps;
    if (!(d.minCoeff() > 0.0)) {
      std::ostringstream os;
      os << "gen_eig: B has eigenvalue " << d.minCoeff() << " after regularization";
      throw NotPositiveDefinite(os.str());
    }
    const Vector w = d.cwiseSqrt().cwiseInverse();
    const Matrix c = w.asDiagonal() * sym_a * w.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (c + c.transpose()));
    out = descending(es);
    out.vectors = w.asDiagonal() * out.vectors;
  } else {
    Matrix breg = 0.5 * (b + b.transpose());
    breg.diagonal().array() += eps;
    Eigen::LLT<Matrix> llt(breg);
    if (llt.info() != Eigen::Success) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(breg, Eigen::EigenvaluesOnly);
      std::ostringstream os;
      os << "gen_eig: B has eigenvalue " << es.eigenvalues().minCoeff()
         << " after regularization";
      throw NotPositiveDefinite(os.str());
    }
    // C = L^{-1} A L^{-T}
    const auto l = llt.matrixL();
    Matrix c = l.solve(sym_a);
    c = l.solve(c.transpose()).transpose();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (c + c.transpose()));
    out = descending(es);
    out.vectors = llt.matrixU().solve(out.vectors);
  }
  normalize_signs(out.vectors);
  return out;
}

Matrix svt(const Matrix& m, double tau) {
  if (tau < 0) throw InvalidArgument("svt: tau must be >= 0");
  if (m.size() == 0) return m;
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector s = (svd.singularValues().array() - tau).max(0.0);
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

Matrix shrink(const Matrix& m, double tau) {
  if (tau < 0) throw InvalidArgument("shrink: tau must be >= 0");
  return m.unaryExpr([tau](double v) {
    const double a = std::abs(v) - tau;
    return a > 0 ? std::copysign(a, v) : 0.0;
  });
}

}  // namespace riemdr
