#include "kernel_ops.h"
#include "riemdr/kernels.h"

namespace riemdr::kernels::omp {

Matrix pairwise_distances(std::span<const Point> points) {
  const Index n = static_cast<Index>(points.size());
  Matrix d = Matrix::Zero(n, n);
  if (n == 0) return d;
  const ManifoldSpec& spec = points[0].spec();
  detail::require_common_spec(points, spec);
  detail::FailureSlot failure;
#pragma omp parallel for schedule(dynamic, 8)
  for (Index i = 0; i < n; ++i) {
    try {
      for (Index j = i + 1; j < n; ++j) {
        const double v =
            geodesic_dist(spec, points[i].data(), points[j].data());
        d(i, j) = v;
        d(j, i) = v;
      }
    } catch (...) {
      failure.record(static_cast<std::size_t>(i), std::current_exception());
    }
  }
  failure.rethrow_with_index("pairwise_distances");
  return d;
}

Matrix cross_distances(std::span<const Point> a, std::span<const Point> b) {
  Matrix d(static_cast<Index>(a.size()), static_cast<Index>(b.size()));
  if (a.empty() || b.empty()) return d;
  const ManifoldSpec& spec = a[0].spec();
  detail::require_common_spec(a, spec);
  detail::require_common_spec(b, spec);
  detail::FailureSlot failure;
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < d.rows(); ++i) {
    try {
      for (Index j = 0; j < d.cols(); ++j)
        d(i, j) = geodesic_dist(spec, a[i].data(), b[j].data());
    } catch (...) {
      failure.record(static_cast<std::size_t>(i), std::current_exception());
    }
  }
  failure.rethrow_with_index("cross_distances");
  return d;
}

Matrix lift(const Point& base, std::span<const Point> points) {
  const ManifoldSpec& spec = base.spec();
  detail::require_common_spec(points, spec);
  const Index n = static_cast<Index>(points.size());
  Matrix z(spec.vec_dim(), n);
  detail::FailureSlot failure;
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    try {
      z.col(i) = vectorize(spec, log_map(spec, base.data(), points[i].data()));
    } catch (...) {
      failure.record(static_cast<std::size_t>(i), std::current_exception());
    }
  }
  failure.rethrow_with_index("lift");
  return z;
}

Matrix euclidean_distances(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ShapeMismatch("euclidean_distances: width");
  Matrix d(a.rows(), b.rows());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.rows(); ++j)
      d(i, j) = detail::euclidean_row_distance(a, i, b, j);
  return d;
}

Matrix shortest_paths(const SparseMatrix& weights) {
  const SparseMatrix w = detail::quantize_weights(weights);
  const Index n = w.cols();
  Matrix d(n, n);
#pragma omp parallel for schedule(dynamic, 4)
  for (Index s = 0; s < n; ++s) detail::dijkstra(w, s, d.col(s).data());
  return d;
}

}  // namespace riemdr::kernels::omp
