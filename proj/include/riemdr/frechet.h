#pragma once

#include <span>

#include "riemdr/manifold.h"

namespace riemdr {

struct FrechetOptions {
  double tol = 1e-6;
  int max_iter = 100;
};

struct FrechetResult {
  Point mean;
  int iterations;
  /// Metric norm of the mean tangent at the returned point.
  double tangent_norm;
  bool converged;
};

/// Karcher iteration x <- Exp_x(mean_i Log_x(x_i)) with unit step.
/// Throws NoConvergence (carrying the last iterate) when max_iter is hit.
Point frechet_mean(std::span<const Point> points, FrechetOptions opts = {});

/// Same iteration; never throws NoConvergence.
FrechetResult frechet_mean_detailed(std::span<const Point> points,
                                    FrechetOptions opts = {});

/// Tangent lifts z_i = vec(Log_base(x_i)) stored as the columns of `vectors`.
struct TangentDataset {
  Point base;
  Matrix vectors;

  Index vec_dim() const { return vectors.rows(); }
  Index size() const { return vectors.cols(); }
};

TangentDataset lift(std::span<const Point> points, const Point& base);

/// Z Z^T / N.
Matrix tangent_covariance(const TangentDataset& td);

}  // namespace riemdr
