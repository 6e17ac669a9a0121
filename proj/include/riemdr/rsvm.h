#pragma once

#include <span>
#include <vector>

#include "riemdr/dataset.h"
#include "riemdr/frechet.h"

namespace riemdr {

enum class SvmMode { TangentLinear, GeodesicKernel };

struct RsvmOptions {
  SvmMode mode = SvmMode::TangentLinear;
  double c_reg = 1.0;
  /// Kernel width; <= 0 selects the median pairwise geodesic distance.
  double sigma = 0.0;
  /// Stop when the maximal KKT violation drops below tol.
  double tol = 1e-5;
  FrechetOptions frechet{};
};

struct RsvmModel {
  SvmMode mode = SvmMode::TangentLinear;
  /// Frechet mean of the training points (linear mode); first training
  /// point in kernel mode, where it is unused.
  Point base;
  /// Tangent weight vector, vectorized (linear mode).
  Vector w;
  double b = 0.0;
  double sigma = 0.0;
  double c_reg = 1.0;
  /// Duals of the support points (alpha > 0).
  Vector alphas;
  std::vector<Point> support_points;
  std::vector<int> support_labels;
  /// Smallest eigenvalue of the jittered kernel Gram matrix (kernel mode).
  double min_gram_eigenvalue = 0.0;
  int iterations = 0;
};

/// Result of the box-constrained SVM dual
///   max sum a - 1/2 a^T diag(y) K diag(y) a,  0 <= a <= C, y^T a = 0.
struct SvmDual {
  Vector alpha;
  double b = 0.0;
  int iterations = 0;
  /// Maximal KKT violation at termination.
  double gap = 0.0;
};

/// Sequential minimal optimization with maximal-violating-pair selection.
/// At most 10 N sweeps of N pair updates. Throws NoConvergence carrying the
/// final violation.
SvmDual solve_svm_dual(const Matrix& k, std::span<const int> y, double c_reg,
                       double tol = 1e-5);

/// Binary soft-margin SVM. Labels must be -1 or +1.
RsvmModel rsvm_fit(std::span<const Point> points, std::span<const int> y,
                   const RsvmOptions& opts = {});
/// Binary dataset: class 0 maps to -1 and class 1 to +1.
RsvmModel rsvm_fit(const LabeledDataset& data, const RsvmOptions& opts = {});

double rsvm_decision(const RsvmModel& m, const Point& x);
/// +1 when the decision value is >= 0, else -1.
int rsvm_predict(const RsvmModel& m, const Point& x);

}  // namespace riemdr
