#include "riemdr/manifold.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "riemdr/errors.h"
#include "riemdr/matrix_functions.h"

namespace riemdr {
namespace {

constexpr double kPi = std::numbers::pi;
// Sphere log is refused this close to the antipode.
constexpr double kCutLocusMargin = 1e-6;
// Below this angle theta/sin(theta) uses its Taylor expansion.
constexpr double kSmallAngle = 1e-6;

void require_same_spec(const ManifoldSpec& a, const ManifoldSpec& b) {
  if (!(a == b)) {
    throw ShapeMismatch("manifold spec mismatch: " + a.to_string() + " vs " +
                        b.to_string());
  }
}

void require_shape(const ManifoldSpec& spec, const Matrix& m,
                   const char* what) {
  if (m.rows() != spec.rows() || m.cols() != spec.cols()) {
    std::ostringstream os;
    os << what << ": expected " << spec.rows() << "x" << spec.cols()
       << " for " << spec.to_string() << ", got " << m.rows() << "x"
       << m.cols();
    throw ShapeMismatch(os.str());
  }
}

[[noreturn]] void stiefel_unsupported(const char* op) {
  throw DomainError(std::string(op) +
                    " is not provided on the Stiefel manifold; use qr_retract");
}

// X^{1/2} and X^{-1/2} from one eigendecomposition.
struct SpdRoots {
  Matrix sqrt;
  Matrix inv_sqrt;
};

SpdRoots spd_roots(const Matrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(x));
  const Vector& l = es.eigenvalues();
  if (!(l.minCoeff() >= 1e-10)) {
    throw DomainError("SPD point has eigenvalue below 1e-10");
  }
  const Matrix& v = es.eigenvectors();
  const Vector s = l.cwiseSqrt();
  return {symmetrize(v * s.asDiagonal() * v.transpose()),
          symmetrize(v * s.cwiseInverse().asDiagonal() * v.transpose())};
}

double theta_over_sin(double theta) {
  if (theta < kSmallAngle) return 1.0 + theta * theta / 6.0;
  return theta / std::sin(theta);
}

Matrix sphere_log(const Matrix& x, const Matrix& y) {
  const double c = (x.transpose() * y)(0, 0);
  const Matrix r = y - c * x;
  const double s = r.norm();
  const double theta = std::atan2(s, c);
  if (theta > kPi - kCutLocusMargin) {
    std::ostringstream os;
    os << "sphere log undefined at cut locus (theta = " << theta << ")";
    throw DomainError(os.str());
  }
  if (s == 0.0) return Matrix::Zero(x.rows(), 1);
  // theta / s equals theta / sin(theta) for unit y; the series keeps it
  // well-defined as theta -> 0.
  const double f = theta < kSmallAngle ? theta_over_sin(theta) : theta / s;
  return f * r;
}

Matrix sphere_exp(const Matrix& x, const Matrix& v) {
  const double t = v.norm();
  if (t == 0.0) return x;
  Matrix y = std::cos(t) * x + (std::sin(t) / t) * v;
  return y / y.norm();
}

Matrix grassmann_log(const Matrix& x, const Matrix& y) {
  const Matrix xty = x.transpose() * y;
  Eigen::JacobiSVD<Matrix> check(xty);
  const Vector& sv = check.singularValues();
  if (sv.size() > 0 && sv(sv.size() - 1) < 1e-12) {
    throw DomainError("Grassmann log undefined: X^T Y is singular");
  }
  // M = (I - X X^T) Y (X^T Y)^{-1}, computed as M^T = (X^T Y)^{-T} A^T.
  const Matrix a = y - x * xty;
  const Matrix m =
      xty.transpose().partialPivLu().solve(a.transpose()).transpose();
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector angles = svd.singularValues().array().atan();
  return svd.matrixU() * angles.asDiagonal() * svd.matrixV().transpose();
}

Matrix grassmann_exp(const Matrix& x, const Matrix& z) {
  if (z.norm() == 0.0) return x;
  Eigen::JacobiSVD<Matrix> svd(z, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const Matrix& v = svd.matrixV();
  const Vector cs = s.array().cos();
  const Vector sn = s.array().sin();
  return x * v * cs.asDiagonal() * v.transpose() +
         svd.matrixU() * sn.asDiagonal() * v.transpose();
}

// Householder QR with the sign of each column fixed so diag(R) > 0, which
// makes qf(.) unique and qf(U) = U for orthonormal U.
Matrix qf(const Matrix& a) {
  Eigen::HouseholderQR<Matrix> qr(a);
  const Matrix r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
  const double scale = std::max(a.norm(), 1.0);
  Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    if (std::abs(r(j, j)) < 1e-12 * scale) {
      throw RankDeficient("QR retraction: U + Z is rank deficient");
    }
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace

// ---------------------------------------------------------------------------
// ManifoldSpec

ManifoldSpec ManifoldSpec::euclidean(int d) {
  if (d < 1) throw InvalidArgument("Euclidean dimension must be >= 1");
  return ManifoldSpec(ManifoldKind::Euclidean, d, 1);
}

ManifoldSpec ManifoldSpec::sphere(int d) {
  if (d < 2) throw InvalidArgument("Sphere(d) requires d >= 2");
  return ManifoldSpec(ManifoldKind::Sphere, d, 1);
}

ManifoldSpec ManifoldSpec::spd(int n) {
  if (n < 1) throw InvalidArgument("SPD(n) requires n >= 1");
  return ManifoldSpec(ManifoldKind::SPD, n, n);
}

ManifoldSpec ManifoldSpec::grassmann(int p, int n) {
  if (p < 1 || p > n) throw InvalidArgument("Grassmann(p,n) requires 1 <= p <= n");
  return ManifoldSpec(ManifoldKind::Grassmann, n, p);
}

ManifoldSpec ManifoldSpec::stiefel(int p, int n) {
  if (p < 1 || p > n) throw InvalidArgument("Stiefel(p,n) requires 1 <= p <= n");
  return ManifoldSpec(ManifoldKind::Stiefel, n, p);
}

int ManifoldSpec::rows() const { return n_; }

int ManifoldSpec::cols() const {
  return kind_ == ManifoldKind::SPD ? n_ : p_;
}

int ManifoldSpec::intrinsic_dim() const {
  switch (kind_) {
    case ManifoldKind::Euclidean: return n_;
    case ManifoldKind::Sphere: return n_ - 1;
    case ManifoldKind::SPD: return n_ * (n_ + 1) / 2;
    case ManifoldKind::Grassmann: return p_ * (n_ - p_);
    case ManifoldKind::Stiefel: return n_ * p_ - p_ * (p_ + 1) / 2;
  }
  return 0;
}

std::string ManifoldSpec::name() const {
  switch (kind_) {
    case ManifoldKind::Euclidean: return "euclidean";
    case ManifoldKind::Sphere: return "sphere";
    case ManifoldKind::SPD: return "spd";
    case ManifoldKind::Grassmann: return "grassmann";
    case ManifoldKind::Stiefel: return "stiefel";
  }
  return "?";
}

std::string ManifoldSpec::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case ManifoldKind::Euclidean: os << "Euclidean(" << n_ << ")"; break;
    case ManifoldKind::Sphere: os << "Sphere(" << n_ << ")"; break;
    case ManifoldKind::SPD: os << "SPD(" << n_ << ")"; break;
    case ManifoldKind::Grassmann: os << "Grassmann(" << p_ << "," << n_ << ")"; break;
    case ManifoldKind::Stiefel: os << "Stiefel(" << p_ << "," << n_ << ")"; break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Validation

void validate_point(const ManifoldSpec& spec, const Matrix& data, double tol) {
  require_shape(spec, data, "point");
  if (!data.allFinite()) throw DomainError("point has non-finite entries");
  switch (spec.kind()) {
    case ManifoldKind::Euclidean:
      return;
    case ManifoldKind::Sphere: {
      const double err = std::abs(data.norm() - 1.0);
      if (err > tol) {
        std::ostringstream os;
        os << "sphere point norm deviates from 1 by " << err;
        throw DomainError(os.str());
      }
      return;
    }
    case ManifoldKind::SPD: {
      const double asym = (data - data.transpose()).norm();
      if (asym > tol * std::max(1.0, data.norm())) {
        throw DomainError("SPD point is not symmetric");
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(data),
                                               Eigen::EigenvaluesOnly);
      if (!(es.eigenvalues().minCoeff() > 0.0)) {
        throw DomainError("SPD point is not positive definite");
      }
      return;
    }
    case ManifoldKind::Grassmann:
    case ManifoldKind::Stiefel: {
      const Index p = data.cols();
      const double err =
          (data.transpose() * data - Matrix::Identity(p, p)).norm();
      if (err > tol) {
        std::ostringstream os;
        os << "basis is not orthonormal (||X^T X - I|| = " << err << ")";
        throw DomainError(os.str());
      }
      return;
    }
  }
}

void validate_tangent(const Point& x, const Matrix& v, double tol) {
  const ManifoldSpec& spec = x.spec();
  require_shape(spec, v, "tangent vector");
  const Matrix& p = x.data();
  const double scale = std::max(1.0, v.norm());
  double err = 0.0;
  switch (spec.kind()) {
    case ManifoldKind::Euclidean:
      return;
    case ManifoldKind::Sphere:
      err = std::abs((p.transpose() * v)(0, 0));
      break;
    case ManifoldKind::SPD:
      err = (v - v.transpose()).norm();
      break;
    case ManifoldKind::Grassmann:
      err = (p.transpose() * v).norm();
      break;
    case ManifoldKind::Stiefel: {
      const Matrix s = p.transpose() * v;
      err = (s + s.transpose()).norm();
      break;
    }
  }
  if (err > tol * scale) {
    std::ostringstream os;
    os << "vector is not tangent at base point for " << spec.to_string()
       << " (residual " << err << ")";
    throw DomainError(os.str());
  }
}

// ---------------------------------------------------------------------------
// Point / TangentVec

Point::Point(ManifoldSpec spec, Matrix data)
    : spec_(spec), data_(std::move(data)) {
  validate_point(spec_, data_);
}

Point Point::unchecked(ManifoldSpec spec, Matrix data) {
  return Point(spec, std::move(data), NoCheck{});
}

TangentVec::TangentVec(Point base, Matrix data)
    : base_(std::move(base)), data_(std::move(data)) {
  validate_tangent(base_, data_);
}

TangentVec TangentVec::unchecked(Point base, Matrix data) {
  return TangentVec(std::move(base), std::move(data), NoCheck{});
}

// ---------------------------------------------------------------------------
// Matrix-level maps

Matrix log_map(const ManifoldSpec& spec, const Matrix& x, const Matrix& y) {
  switch (spec.kind()) {
    case ManifoldKind::Euclidean:
      return y - x;
    case ManifoldKind::Sphere:
      return sphere_log(x, y);
    case ManifoldKind::SPD: {
      const SpdRoots r = spd_roots(x);
      return symmetrize(r.sqrt * sym_log(r.inv_sqrt * y * r.inv_sqrt) *
                        r.sqrt);
    }
    case ManifoldKind::Grassmann:
      return grassmann_log(x, y);
    case ManifoldKind::Stiefel:
      stiefel_unsupported("log_map");
  }
  return {};
}

Matrix exp_map(const ManifoldSpec& spec, const Matrix& x, const Matrix& v) {
  switch (spec.kind()) {
    case ManifoldKind::Euclidean:
      return x + v;
    case ManifoldKind::Sphere:
      return sphere_exp(x, v);
    case ManifoldKind::SPD: {
      if (v.norm() == 0.0) return x;
      const SpdRoots r = spd_roots(x);
      return symmetrize(r.sqrt * sym_exp(r.inv_sqrt * v * r.inv_sqrt) *
                        r.sqrt);
    }
    case ManifoldKind::Grassmann:
      return grassmann_exp(x, v);
    case ManifoldKind::Stiefel:
      stiefel_unsupported("exp_map");
  }
  return {};
}

double geodesic_dist(const ManifoldSpec& spec, const Matrix& x,
                     const Matrix& y) {
  switch (spec.kind()) {
    case ManifoldKind::Euclidean:
      return (y - x).norm();
    case ManifoldKind::Sphere: {
      const double c = (x.transpose() * y)(0, 0);
      return std::atan2((y - c * x).norm(), c);
    }
    case ManifoldKind::SPD: {
      const Matrix w = spd_roots(x).inv_sqrt;
      Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(w * y * w),
                                               Eigen::EigenvaluesOnly);
      const Vector& l = es.eigenvalues();
      if (!(l.minCoeff() >= 1e-10)) {
        throw DomainError("SPD distance: near-singular argument");
      }
      return l.array().log().matrix().norm();
    }
    case ManifoldKind::Grassmann:
      return principal_angles(x, y).norm();
    case ManifoldKind::Stiefel:
      stiefel_unsupported("geodesic_dist");
  }
  return 0.0;
}

Matrix project_tangent(const ManifoldSpec& spec, const Matrix& x,
                       const Matrix& v) {
  switch (spec.kind()) {
    case ManifoldKind::Euclidean:
      return v;
    case ManifoldKind::Sphere:
      return v - (x.transpose() * v)(0, 0) * x;
    case ManifoldKind::SPD:
      return symmetrize(v);
    case ManifoldKind::Grassmann:
      return v - x * (x.transpose() * v);
    case ManifoldKind::Stiefel:
      return v - x * symmetrize(x.transpose() * v);
  }
  return {};
}

double inner(const ManifoldSpec& spec, const Matrix& x, const Matrix& u,
             const Matrix& v) {
  switch (spec.kind()) {
    case ManifoldKind::Euclidean:
    case ManifoldKind::Sphere:
    case ManifoldKind::Grassmann:
      return (u.array() * v.array()).sum();
    case ManifoldKind::SPD: {
      // tr(X^{-1} U X^{-1} V)
      Eigen::LLT<Matrix> llt(x);
      if (llt.info() != Eigen::Success) {
        throw DomainError("SPD inner product: base point not positive definite");
      }
      const Matrix a = llt.solve(u);
      const Matrix b = llt.solve(v);
      return (a.array() * b.transpose().array()).sum();
    }
    case ManifoldKind::Stiefel: {
      // tr(U^T (I - X X^T / 2) V)
      const Matrix w = v - 0.5 * x * (x.transpose() * v);
      return (u.array() * w.array()).sum();
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Point-level maps

TangentVec log_map(const Point& x, const Point& y) {
  require_same_spec(x.spec(), y.spec());
  return TangentVec::unchecked(x, log_map(x.spec(), x.data(), y.data()));
}

Point exp_map(const Point& x, const TangentVec& v) {
  require_same_spec(x.spec(), v.base().spec());
  require_shape(x.spec(), v.data(), "tangent vector");
  return Point::unchecked(x.spec(), exp_map(x.spec(), x.data(), v.data()));
}

double geodesic_dist(const Point& x, const Point& y) {
  require_same_spec(x.spec(), y.spec());
  return geodesic_dist(x.spec(), x.data(), y.data());
}

TangentVec project_tangent(const Point& x, const Matrix& v_ambient) {
  require_shape(x.spec(), v_ambient, "ambient vector");
  return TangentVec::unchecked(
      x, project_tangent(x.spec(), x.data(), v_ambient));
}

Point qr_retract(const Point& x, const TangentVec& v) {
  require_same_spec(x.spec(), v.base().spec());
  require_shape(x.spec(), v.data(), "tangent vector");
  switch (x.spec().kind()) {
    case ManifoldKind::Sphere:
    case ManifoldKind::Grassmann:
    case ManifoldKind::Stiefel:
      return Point::unchecked(x.spec(), qf(x.data() + v.data()));
    default:
      throw InvalidArgument("qr_retract applies to Sphere, Grassmann and "
                            "Stiefel representatives only");
  }
}

double inner(const Point& x, const TangentVec& u, const TangentVec& v) {
  require_same_spec(x.spec(), u.base().spec());
  require_same_spec(x.spec(), v.base().spec());
  require_shape(x.spec(), u.data(), "tangent vector");
  require_shape(x.spec(), v.data(), "tangent vector");
  return inner(x.spec(), x.data(), u.data(), v.data());
}

double norm(const Point& x, const TangentVec& v) {
  return std::sqrt(std::max(0.0, inner(x, v, v)));
}

Point retract(const Point& x, const TangentVec& v) {
  switch (x.spec().kind()) {
    case ManifoldKind::Grassmann:
    case ManifoldKind::Stiefel:
      return qr_retract(x, v);
    default:
      return exp_map(x, v);
  }
}

Point project_to_manifold(const ManifoldSpec& spec, const Matrix& data) {
  require_shape(spec, data, "point");
  switch (spec.kind()) {
    case ManifoldKind::Euclidean:
      return Point::unchecked(spec, data);
    case ManifoldKind::Sphere: {
      const double n = data.norm();
      if (!(n > 0.0)) throw DomainError("cannot normalize a zero vector");
      return Point::unchecked(spec, data / n);
    }
    case ManifoldKind::SPD: {
      Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(data));
      Vector l = es.eigenvalues();
      const double floor = 1e-10 * std::max(1.0, l.cwiseAbs().maxCoeff());
      for (Index i = 0; i < l.size(); ++i) l(i) = std::max(l(i), floor);
      const Matrix& v = es.eigenvectors();
      return Point::unchecked(spec,
                              symmetrize(v * l.asDiagonal() * v.transpose()));
    }
    case ManifoldKind::Grassmann:
    case ManifoldKind::Stiefel:
      return Point::unchecked(spec, qf(data));
  }
  return Point::unchecked(spec, data);
}

Vector principal_angles(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw ShapeMismatch("principal_angles: basis shapes differ");
  }
  // Cosines from X^T Y and sines from (I - X X^T) Y; pairing them through
  // atan2 keeps small and near-orthogonal angles accurate.
  const Matrix xty = x.transpose() * y;
  Vector cs = Eigen::JacobiSVD<Matrix>(xty).singularValues();
  Vector sn = Eigen::JacobiSVD<Matrix>(y - x * xty).singularValues();
  const Index p = x.cols();
  // cs is descending; sn is descending, so pair cs(i) with sn(p-1-i).
  Vector theta(p);
  for (Index i = 0; i < p; ++i) {
    const double c = std::clamp(cs(i), -1.0, 1.0);
    const double s = i < sn.size() ? std::clamp(sn(p - 1 - i), 0.0, 1.0) : 0.0;
    theta(i) = std::atan2(s, c);
  }
  std::sort(theta.data(), theta.data() + p);
  return theta;
}

Vector vectorize(const ManifoldSpec& spec, const Matrix& m) {
  require_shape(spec, m, "vectorize");
  Vector out(m.size());
  Index k = 0;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out(k++) = m(i, j);
  }
  return out;
}

Matrix devectorize(const ManifoldSpec& spec, const Vector& v) {
  if (v.size() != spec.vec_dim()) {
    throw ShapeMismatch("devectorize: length " + std::to_string(v.size()) +
                        " does not match " + spec.to_string());
  }
  Matrix m(spec.rows(), spec.cols());
  Index k = 0;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = v(k++);
  }
  return m;
}

Point random_point(const ManifoldSpec& spec, Rng& rng) {
  const auto gaussian = [&rng](Index r, Index c) {
    Matrix m(r, c);
    for (Index j = 0; j < c; ++j)
      for (Index i = 0; i < r; ++i) m(i, j) = rng.normal();
    return m;
  };
  switch (spec.kind()) {
    case ManifoldKind::Euclidean:
    case ManifoldKind::Sphere:
    case ManifoldKind::Grassmann:
    case ManifoldKind::Stiefel:
      return project_to_manifold(spec, gaussian(spec.rows(), spec.cols()));
    case ManifoldKind::SPD: {
      const int n = spec.n();
      const Matrix q = qf(gaussian(n, n));
      Vector l(n);
      for (int i = 0; i < n; ++i) l(i) = std::exp(rng.uniform(-1.0, 1.0));
      return Point::unchecked(spec, symmetrize(q * l.asDiagonal() * q.transpose()));
    }
  }
  return project_to_manifold(spec, gaussian(spec.rows(), spec.cols()));
}

TangentVec random_tangent(const Point& x, Rng& rng, double length) {
  const ManifoldSpec& spec = x.spec();
  Matrix g(spec.rows(), spec.cols());
  for (Index j = 0; j < g.cols(); ++j)
    for (Index i = 0; i < g.rows(); ++i) g(i, j) = rng.normal();
  TangentVec v = project_tangent(x, g);
  const double n = norm(x, v);
  if (n == 0.0) return v;
  return TangentVec::unchecked(x, v.data() * (length / n));
}

}  // namespace riemdr
