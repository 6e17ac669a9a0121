#pragma once

// Data-parallel kernels. Each kernel has an OpenMP implementation and a
// serial reference with identical per-element arithmetic, so both produce
// bitwise-identical results. The unqualified names dispatch to OpenMP.

#include <span>

#include "riemdr/manifold.h"

namespace riemdr::kernels {

namespace serial {

/// Symmetric N x N geodesic distance matrix with zero diagonal.
Matrix pairwise_distances(std::span<const Point> points);
/// |a| x |b| geodesic distances.
Matrix cross_distances(std::span<const Point> a, std::span<const Point> b);
/// vec_dim x N matrix whose column i is vec(Log_base(points[i])).
/// Failures are rethrown as DomainError naming the smallest failing index.
Matrix lift(const Point& base, std::span<const Point> points);
/// Euclidean distances between the rows of a and the rows of b.
Matrix euclidean_distances(const Matrix& a, const Matrix& b);
/// All-pairs shortest-path lengths over a symmetric nonnegative weight
/// matrix (one Dijkstra run per source). Unreachable pairs are +inf.
/// Weights are first rounded to a power-of-two grid fine enough that every
/// path sum is exact, so the triangle inequality holds without tolerance.
Matrix shortest_paths(const SparseMatrix& weights);

}  // namespace serial

namespace omp {

Matrix pairwise_distances(std::span<const Point> points);
Matrix cross_distances(std::span<const Point> a, std::span<const Point> b);
Matrix lift(const Point& base, std::span<const Point> points);
Matrix euclidean_distances(const Matrix& a, const Matrix& b);
Matrix shortest_paths(const SparseMatrix& weights);

}  // namespace omp

using omp::cross_distances;
using omp::euclidean_distances;
using omp::lift;
using omp::pairwise_distances;
using omp::shortest_paths;

}  // namespace riemdr::kernels
