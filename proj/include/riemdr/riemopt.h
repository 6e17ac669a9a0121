#pragma once

#include <functional>
#include <vector>

#include "riemdr/errors.h"
#include "riemdr/manifold.h"

namespace riemdr {

struct RgdConfig {
  double step_size = 1e-2;
  int max_iter = 1000;
  double grad_tol = 1e-6;
  /// Armijo backtracking (constant 1e-4, halving) starting from step_size.
  bool backtracking = false;
  /// When false, hitting max_iter returns the trace instead of throwing.
  bool require_convergence = true;

  void validate() const;
};

struct RgdTrace {
  int iterates_count = 0;
  std::vector<double> grad_norms;
  std::vector<double> objective_values;
  Point final_point;
  bool converged = false;
};

/// Objective value and ambient Euclidean gradient at a point's data matrix.
struct ObjectiveEval {
  double value;
  Matrix euclidean_grad;
};
using Objective = std::function<ObjectiveEval(const Matrix&)>;

/// Thrown when rgd_minimize reaches max_iter with require_convergence set.
class RgdNoConvergence : public NoConvergence {
 public:
  explicit RgdNoConvergence(RgdTrace trace);
  const RgdTrace& trace() const { return trace_; }

 private:
  RgdTrace trace_;
};

/// Projection of the ambient gradient onto T_x M. This is the Riemannian
/// gradient for the metric inherited from the ambient Frobenius product.
TangentVec riemannian_grad(const Matrix& euclidean_grad, const Point& x);

/// Gradient with respect to `inner`: equals riemannian_grad except on SPD
/// (affine-invariant metric, X sym(G) X) and Stiefel (canonical metric,
/// G - U G^T U).
TangentVec riemannian_grad_metric(const Matrix& euclidean_grad,
                                  const Point& x);

/// x_{k+1} = Retr_{x_k}(-a grad f(x_k)), QR retraction on Stiefel/Grassmann
/// and Exp elsewhere, re-projected onto the manifold after every step.
/// One entry per evaluated iterate is recorded; the gradient norm is the
/// Frobenius norm of the projected gradient.
RgdTrace rgd_minimize(const Objective& f, const Point& x0,
                      const RgdConfig& cfg);

}  // namespace riemdr
