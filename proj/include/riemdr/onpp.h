#pragma once

#include <span>
#include <vector>

#include "riemdr/dataset.h"
#include "riemdr/frechet.h"
#include "riemdr/riemopt.h"

namespace riemdr {

/// Weights w minimizing ||sum_j w_j z_j||^2 subject to sum_j w_j = 1, for
/// neighbor tangent vectors z_j (the columns of `z`). The Gram matrix gets
/// eps = 1e-6 trace(G) added to its diagonal when k exceeds
/// `tangent_dim` or G is numerically singular. Throws DegenerateNeighborhood
/// if it stays singular.
Vector reconstruction_weights(const Matrix& z, int tangent_dim);

/// Row-stochastic N x N matrix: row i holds the reconstruction weights of
/// x_i from its k_nn geodesic neighbors, using Log_{x_i}(x_j).
SparseMatrix onpp_weights(const LabeledDataset& data, int k_nn);

struct OnppOptions {
  FrechetOptions frechet{};
  /// Step size and tolerance apply to the quadratic form scaled to unit
  /// spectral norm, so the defaults do not depend on the data scale.
  RgdConfig rgd{0.5, 20000, 1e-10, true, false};
};

struct OnppModel {
  Point base;
  SparseMatrix weights;
  /// vec_dim x d_out with orthonormal columns.
  Matrix projection;
  /// tr(U^T X M X^T U) per optimizer iterate.
  std::vector<double> objective_trace;
  bool converged = false;
};

/// Minimizes tr(U^T X M X^T U) over the Stiefel manifold by gradient descent
/// with QR retraction, X being the tangent lifts at the Frechet mean and
/// M = (I - W)^T (I - W). The search is restricted to the span of the lifted
/// data, and starts from its d_out leading singular vectors.
OnppModel onpp_fit(const LabeledDataset& data, int d_out, int k_nn,
                   const OnppOptions& opts = {});

/// The quadratic form X M X^T for lifted data X (columns) and weights W.
Matrix onpp_quadratic_form(const Matrix& x, const SparseMatrix& w);

/// Row i is projection^T vec(Log_base(x_i)).
Matrix onpp_transform(const OnppModel& m, std::span<const Point> points);

}  // namespace riemdr
