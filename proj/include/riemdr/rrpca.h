#pragma once

#include <vector>

#include "riemdr/dataset.h"
#include "riemdr/frechet.h"
#include "riemdr/pga.h"

namespace riemdr {

/// Z = L + S split of a tangent data matrix.
struct RpcaDecomposition {
  Matrix low_rank;
  Matrix sparse;
  int iterations = 0;
  /// ||Z - L - S||_F / ||Z||_F after the last iteration (0 for Z = 0).
  double residual = 0.0;
};

/// min ||L||_* + lambda ||S||_1 s.t. Z = L + S by inexact augmented
/// Lagrangian iterations: S by shrinkage, L by singular value thresholding,
/// scaled dual ascent, penalty rho growing geometrically (x1.1) from
/// 1.25 / ||Z||_2. lambda <= 0 selects 1 / sqrt(max(rows, cols)).
RpcaDecomposition rpca_decompose(const Matrix& z, double lambda = 0.0,
                                 int iters = 50);

struct RrpcaResult {
  Matrix low_rank;
  Matrix sparse;
  Point base;
  std::vector<Point> cleaned_points;
  int iterations = 0;
  double residual = 0.0;
};

/// Robust PCA of the tangent lifts at the Frechet mean; cleaned points are
/// Exp_base of the low-rank columns. Non-convergence is soft: the residual
/// is reported and the result returned.
RrpcaResult rrpca_fit(const LabeledDataset& data, double lambda = 0.0,
                      int iters = 50, FrechetOptions opts = {});

/// Projection used to embed data after R-RPCA: the top-k left singular
/// vectors of L, with eigenvalues sigma^2 / N. Transform with pga_transform.
PgaModel rrpca_projection(const RrpcaResult& r, int k);

}  // namespace riemdr
