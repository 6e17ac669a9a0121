#include "riemdr/frechet.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "riemdr/errors.h"
#include "riemdr/kernels.h"
#include "riemdr/log.h"
#include "riemdr/matrix_functions.h"

namespace riemdr {
namespace {

void require_nonempty_common(std::span<const Point> points) {
  if (points.empty()) throw InvalidArgument("frechet_mean: no points");
  const ManifoldSpec& spec = points[0].spec();
  for (const Point& p : points) {
    if (!(p.spec() == spec)) throw ShapeMismatch("frechet_mean: mixed specs");
  }
}

Point initial_guess(std::span<const Point> points) {
  const ManifoldSpec& spec = points[0].spec();
  switch (spec.kind()) {
    case ManifoldKind::Euclidean:
    case ManifoldKind::Sphere:
    case ManifoldKind::SPD: {
      Matrix sum = Matrix::Zero(spec.rows(), spec.cols());
      for (const Point& p : points) sum += p.data();
      sum /= static_cast<double>(points.size());
      if (spec.kind() == ManifoldKind::Euclidean) {
        return Point::unchecked(spec, sum);
      }
      if (spec.kind() == ManifoldKind::Sphere && sum.norm() < 1e-12) {
        return points[0];
      }
      return project_to_manifold(spec, sum);
    }
    case ManifoldKind::Grassmann:
    case ManifoldKind::Stiefel:
      break;
  }
  return points[0];
}

void check_hemisphere(std::span<const Point> points) {
  const Index n = static_cast<Index>(points.size());
  Matrix x(points[0].spec().rows(), n);
  for (Index i = 0; i < n; ++i) x.col(i) = points[i].data().col(0);
  const double lowest = (x.transpose() * x).minCoeff();
  const double limit = std::cos(std::numbers::pi - 0.2);
  if (lowest < limit) {
    std::ostringstream os;
    os << "frechet_mean: sphere points span more than an open hemisphere "
          "(max pairwise distance "
       << std::acos(std::max(-1.0, lowest)) << "); the mean may be unreliable";
    warn(os.str());
  }
}

// Column sum in index order keeps the result independent of threading.
Matrix mean_tangent(const Point& x, std::span<const Point> points) {
  const ManifoldSpec& spec = x.spec();
  const Matrix z = kernels::lift(x, points);
  Vector acc = Vector::Zero(z.rows());
  for (Index i = 0; i < z.cols(); ++i) acc += z.col(i);
  acc /= static_cast<double>(z.cols());
  return devectorize(spec, acc);
}

}  // namespace

FrechetResult frechet_mean_detailed(std::span<const Point> points,
                                    FrechetOptions opts) {
  require_nonempty_common(points);
  if (!(opts.tol > 0.0) || opts.max_iter < 1) {
    throw InvalidArgument("frechet_mean: tol must be > 0 and max_iter >= 1");
  }
  const ManifoldSpec& spec = points[0].spec();
  if (spec.kind() == ManifoldKind::Sphere && points.size() > 1) {
    check_hemisphere(points);
  }

  Point x = initial_guess(points);
  double norm = 0.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    const Matrix v = mean_tangent(x, points);
    norm = std::sqrt(std::max(0.0, inner(spec, x.data(), v, v)));
    if (norm < opts.tol) return {x, it, norm, true};
    x = project_to_manifold(spec, exp_map(spec, x.data(), v));
  }
  return {x, opts.max_iter, norm, false};
}

Point frechet_mean(std::span<const Point> points, FrechetOptions opts) {
  FrechetResult r = frechet_mean_detailed(points, opts);
  if (!r.converged) {
    std::ostringstream os;
    os << "frechet_mean: no convergence after " << r.iterations
       << " iterations (tangent norm " << r.tangent_norm << ")";
    throw NoConvergence(os.str(), r.iterations, r.tangent_norm,
                        r.mean.data());
  }
  return r.mean;
}

TangentDataset lift(std::span<const Point> points, const Point& base) {
  return {base, kernels::lift(base, points)};
}

Matrix tangent_covariance(const TangentDataset& td) {
  if (td.size() < 1) throw InvalidArgument("tangent_covariance: no vectors");
  const Index d = td.vec_dim();
  Matrix lower = Matrix::Zero(d, d);
  lower.selfadjointView<Eigen::Lower>().rankUpdate(
      td.vectors, 1.0 / static_cast<double>(td.size()));
  return lower.selfadjointView<Eigen::Lower>();
}

}  // namespace riemdr
