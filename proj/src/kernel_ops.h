#pragma once

// Per-element operations shared by the serial and OpenMP kernels.

#include <cstddef>
#include <exception>
#include <limits>
#include <queue>
#include <span>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "riemdr/errors.h"
#include "riemdr/manifold.h"

namespace riemdr::kernels::detail {

inline void require_common_spec(std::span<const Point> points,
                                const ManifoldSpec& spec) {
  for (const Point& p : points) {
    if (!(p.spec() == spec)) {
      throw ShapeMismatch("kernel input mixes " + p.spec().to_string() +
                          " and " + spec.to_string());
    }
  }
}

inline double euclidean_row_distance(const Matrix& a, Index i, const Matrix& b,
                                     Index j) {
  double s = 0.0;
  for (Index c = 0; c < a.cols(); ++c) {
    const double d = a(i, c) - b(j, c);
    s += d * d;
  }
  return std::sqrt(s);
}

/// Rounds every edge weight to a multiple of a power of two q chosen so the
/// sum of all weights is below 2^52 q. Path lengths are then exact sums,
/// which makes shortest-path distances satisfy the triangle inequality
/// exactly and independent of summation order. The relative change per
/// edge is below 2^-52 times (total weight / edge weight).
inline SparseMatrix quantize_weights(const SparseMatrix& w) {
  SparseMatrix out = w;
  double total = 0.0;
  for (Index k = 0; k < out.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(out, k); it; ++it) total += it.value();
  if (!(total > 0.0) || !std::isfinite(total)) return out;
  int e = 0;
  std::frexp(total, &e);
  const double q = std::ldexp(1.0, e - 51);
  for (Index k = 0; k < out.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(out, k); it; ++it)
      it.valueRef() = std::round(it.value() / q) * q;
  return out;
}

/// Single-source Dijkstra writing one column of the distance matrix.
inline void dijkstra(const SparseMatrix& w, Index source, double* out) {
  const Index n = w.cols();
  for (Index i = 0; i < n; ++i) out[i] = std::numeric_limits<double>::infinity();
  using Item = std::pair<double, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  out[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > out[u]) continue;
    for (SparseMatrix::InnerIterator it(w, u); it; ++it) {
      const Index v = it.row();
      const double nd = d + it.value();
      if (nd < out[v]) {
        out[v] = nd;
        heap.emplace(nd, v);
      }
    }
  }
}

/// Collects the first (lowest-index) failure of a parallel loop.
class FailureSlot {
 public:
  void record(std::size_t index, std::exception_ptr e) {
#pragma omp critical(riemdr_failure_slot)
    {
      if (!error_ || index < index_) {
        index_ = index;
        error_ = std::move(e);
      }
    }
  }

  void rethrow_with_index(const char* what) const {
    if (!error_) return;
    try {
      std::rethrow_exception(error_);
    } catch (const Error& e) {
      throw DomainError(std::string(what) + ": point " +
                        std::to_string(index_) + ": " + e.what());
    }
  }

 private:
  std::size_t index_ = 0;
  std::exception_ptr error_;
};

}  // namespace riemdr::kernels::detail
