#pragma once

#include <span>
#include <vector>

#include "riemdr/dataset.h"
#include "riemdr/frechet.h"

namespace riemdr {

/// Principal geodesic analysis: PCA of the tangent lifts at the Frechet mean.
struct PgaModel {
  Point base;
  /// vec_dim x k, orthonormal columns.
  Matrix basis;
  /// Top-k eigenvalues of the tangent covariance, descending.
  Vector eigenvalues;

  int k() const { return static_cast<int>(basis.cols()); }
};

PgaModel pga_fit(const LabeledDataset& data, int k, FrechetOptions opts = {});

/// Row i is basis^T vec(Log_base(x_i)).
Matrix pga_transform(const PgaModel& m, std::span<const Point> points);

/// x_i = Exp_base(P(basis * coords_i)) where P projects onto T_base M.
std::vector<Point> pga_reconstruct(const PgaModel& m, const Matrix& coords);

}  // namespace riemdr
