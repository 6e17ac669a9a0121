#pragma once

#include <string>

#include "riemdr/rng.h"
#include "riemdr/types.h"

namespace riemdr {

enum class ManifoldKind { Euclidean, Sphere, SPD, Grassmann, Stiefel };

/// Which manifold a dataset lives on, plus its shape parameters.
///
///   Euclidean(d)    points are d-vectors
///   Sphere(d)       unit d-vectors (S^{d-1} embedded in R^d), d >= 2
///   SPD(n)          n x n symmetric positive definite matrices
///   Grassmann(p,n)  p-dim subspaces of R^n, stored as n x p orthonormal bases
///   Stiefel(p,n)    n x p matrices with orthonormal columns
class ManifoldSpec {
 public:
  static ManifoldSpec euclidean(int d);
  static ManifoldSpec sphere(int d);
  static ManifoldSpec spd(int n);
  static ManifoldSpec grassmann(int p, int n);
  static ManifoldSpec stiefel(int p, int n);

  ManifoldKind kind() const { return kind_; }
  /// Shape of the stored point/tangent matrix.
  int rows() const;
  int cols() const;
  /// Length of a vectorized tangent vector.
  int vec_dim() const { return rows() * cols(); }
  /// Dimension of the manifold itself.
  int intrinsic_dim() const;

  /// Ambient dimension for vector manifolds, n for matrix manifolds.
  int n() const { return n_; }
  /// Column count p for Grassmann/Stiefel, 1 otherwise.
  int p() const { return p_; }

  std::string name() const;
  std::string to_string() const;

  bool operator==(const ManifoldSpec&) const = default;

 private:
  ManifoldSpec(ManifoldKind kind, int n, int p) : kind_(kind), n_(n), p_(p) {}

  ManifoldKind kind_;
  int n_;
  int p_;
};

/// Tolerance used when validating point and tangent invariants.
inline constexpr double kInvariantTol = 1e-10;

/// A point on a manifold. Construction validates the manifold invariant.
class Point {
 public:
  Point(ManifoldSpec spec, Matrix data);

  /// Skips validation; for results the library has produced itself.
  static Point unchecked(ManifoldSpec spec, Matrix data);

  const ManifoldSpec& spec() const { return spec_; }
  const Matrix& data() const { return data_; }

 private:
  struct NoCheck {};
  Point(ManifoldSpec spec, Matrix data, NoCheck)
      : spec_(spec), data_(std::move(data)) {}

  ManifoldSpec spec_;
  Matrix data_;
};

/// A tangent vector together with the point it is based at.
class TangentVec {
 public:
  TangentVec(Point base, Matrix data);

  static TangentVec unchecked(Point base, Matrix data);

  const Point& base() const { return base_; }
  const Matrix& data() const { return data_; }

 private:
  struct NoCheck {};
  TangentVec(Point base, Matrix data, NoCheck)
      : base_(std::move(base)), data_(std::move(data)) {}

  Point base_;
  Matrix data_;
};

/// Throws DomainError / ShapeMismatch if `data` is not a valid point.
void validate_point(const ManifoldSpec& spec, const Matrix& data,
                    double tol = kInvariantTol);
/// Throws DomainError / ShapeMismatch if `v` is not tangent at `x`.
void validate_tangent(const Point& x, const Matrix& v,
                      double tol = kInvariantTol);

TangentVec log_map(const Point& x, const Point& y);
Point exp_map(const Point& x, const TangentVec& v);
double geodesic_dist(const Point& x, const Point& y);
TangentVec project_tangent(const Point& x, const Matrix& v_ambient);
Point qr_retract(const Point& x, const TangentVec& v);
double inner(const Point& x, const TangentVec& u, const TangentVec& v);
double norm(const Point& x, const TangentVec& v);

/// Matrix-level variants used by inner loops that already hold validated data.
Matrix log_map(const ManifoldSpec& spec, const Matrix& x, const Matrix& y);
Matrix exp_map(const ManifoldSpec& spec, const Matrix& x, const Matrix& v);
double geodesic_dist(const ManifoldSpec& spec, const Matrix& x,
                     const Matrix& y);
Matrix project_tangent(const ManifoldSpec& spec, const Matrix& x,
                       const Matrix& v);
double inner(const ManifoldSpec& spec, const Matrix& x, const Matrix& u,
             const Matrix& v);

/// Retraction used by the optimizer: QR for Stiefel/Grassmann, Exp otherwise.
Point retract(const Point& x, const TangentVec& v);

/// Maps an arbitrary ambient matrix to the nearest-ish valid point
/// (normalize / QR / symmetrize and clamp eigenvalues).
Point project_to_manifold(const ManifoldSpec& spec, const Matrix& data);

/// Principal angles between span(x) and span(y), ascending.
Vector principal_angles(const Matrix& x, const Matrix& y);

/// Fixed flattening of a tangent (or point) matrix: identity for vectors,
/// row-major for matrices.
Vector vectorize(const ManifoldSpec& spec, const Matrix& m);
Matrix devectorize(const ManifoldSpec& spec, const Vector& v);

Point random_point(const ManifoldSpec& spec, Rng& rng);
/// Random tangent vector at x with metric norm `length`.
TangentVec random_tangent(const Point& x, Rng& rng, double length);

}  // namespace riemdr
