#pragma once

#include <span>

#include "riemdr/dataset.h"
#include "riemdr/frechet.h"

namespace riemdr {

struct RldaModel {
  Point base;
  /// vec_dim x d_out, S_W-orthonormal columns.
  Matrix projection;
  /// Column c is the tangent mean of class c.
  Matrix class_means_tangent;
  Vector eigenvalues;
};

/// Within/between-class scatter of the tangent lifts at the Frechet mean of
/// all points, then the top d_out generalized eigenvectors of
/// (S_B, S_W + eps I), eps = 1e-6 trace(S_W) / dim. Requires d_out <= C - 1.
RldaModel rlda_fit(const LabeledDataset& data, int d_out,
                   FrechetOptions opts = {});

/// Row i is projection^T vec(Log_base(x_i)).
Matrix rlda_transform(const RldaModel& m, std::span<const Point> points);

/// Exp_base(P(projection * coords_i)), P the tangent projection.
std::vector<Point> rlda_reconstruct(const RldaModel& m, const Matrix& coords);

/// Scatter matrices of column data z with labels in [0, C).
struct Scatter {
  Matrix within;
  Matrix between;
  Matrix class_means;
};
Scatter scatter_matrices(const Matrix& z, std::span<const int> labels,
                         int num_classes);

}  // namespace riemdr
