#include "kernel_ops.h"
#include "riemdr/kernels.h"

namespace riemdr::kernels::serial {

Matrix pairwise_distances(std::span<const Point> points) {
  const Index n = static_cast<Index>(points.size());
  Matrix d = Matrix::Zero(n, n);
  if (n == 0) return d;
  const ManifoldSpec& spec = points[0].spec();
  detail::require_common_spec(points, spec);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double v = geodesic_dist(spec, points[i].data(), points[j].data());
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

Matrix cross_distances(std::span<const Point> a, std::span<const Point> b) {
  Matrix d(static_cast<Index>(a.size()), static_cast<Index>(b.size()));
  if (a.empty() || b.empty()) return d;
  const ManifoldSpec& spec = a[0].spec();
  detail::require_common_spec(a, spec);
  detail::require_common_spec(b, spec);
  for (Index i = 0; i < d.rows(); ++i)
    for (Index j = 0; j < d.cols(); ++j)
      d(i, j) = geodesic_dist(spec, a[i].data(), b[j].data());
  return d;
}

Matrix lift(const Point& base, std::span<const Point> points) {
  const ManifoldSpec& spec = base.spec();
  detail::require_common_spec(points, spec);
  Matrix z(spec.vec_dim(), static_cast<Index>(points.size()));
  detail::FailureSlot failure;
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      z.col(static_cast<Index>(i)) =
          vectorize(spec, log_map(spec, base.data(), points[i].data()));
    } catch (...) {
      failure.record(i, std::current_exception());
      break;
    }
  }
  failure.rethrow_with_index("lift");
  return z;
}

Matrix euclidean_distances(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ShapeMismatch("euclidean_distances: width");
  Matrix d(a.rows(), b.rows());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.rows(); ++j)
      d(i, j) = detail::euclidean_row_distance(a, i, b, j);
  return d;
}

Matrix shortest_paths(const SparseMatrix& weights) {
  const SparseMatrix w = detail::quantize_weights(weights);
  const Index n = w.cols();
  Matrix d(n, n);
  for (Index s = 0; s < n; ++s) detail::dijkstra(w, s, d.col(s).data());
  return d;
}

}  // namespace riemdr::kernels::serial
