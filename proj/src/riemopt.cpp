#include "riemdr/riemopt.h"

#include <cmath>
#include <sstream>

#include "riemdr/matrix_functions.h"

namespace riemdr {
namespace {

std::string no_convergence_message(const RgdTrace& t) {
  std::ostringstream os;
  os << "rgd_minimize: no convergence after " << t.iterates_count
     << " iterations (gradient norm "
     << (t.grad_norms.empty() ? 0.0 : t.grad_norms.back()) << ")";
  return os.str();
}

ObjectiveEval evaluate(const Objective& f, const Point& x) {
  ObjectiveEval e = f(x.data());
  if (!std::isfinite(e.value) || !e.euclidean_grad.allFinite()) {
    throw NonFiniteObjective("rgd_minimize: objective or gradient not finite");
  }
  return e;
}

}  // namespace

void RgdConfig::validate() const {
  if (!(step_size > 0.0)) throw InvalidArgument("RgdConfig: step_size <= 0");
  if (max_iter < 1) throw InvalidArgument("RgdConfig: max_iter < 1");
  if (!(grad_tol > 0.0)) throw InvalidArgument("RgdConfig: grad_tol <= 0");
}

RgdNoConvergence::RgdNoConvergence(RgdTrace trace)
    : NoConvergence(no_convergence_message(trace), trace.iterates_count,
                    trace.grad_norms.empty() ? 0.0 : trace.grad_norms.back(),
                    trace.final_point.data()),
      trace_(std::move(trace)) {}

TangentVec riemannian_grad(const Matrix& euclidean_grad, const Point& x) {
  return project_tangent(x, euclidean_grad);
}

TangentVec riemannian_grad_metric(const Matrix& euclidean_grad,
                                  const Point& x) {
  const ManifoldSpec& spec = x.spec();
  const Matrix& u = x.data();
  switch (spec.kind()) {
    case ManifoldKind::SPD: {
      TangentVec g = project_tangent(x, euclidean_grad);
      return TangentVec::unchecked(x, symmetrize(u * g.data() * u));
    }
    case ManifoldKind::Stiefel: {
      if (euclidean_grad.rows() != u.rows() ||
          euclidean_grad.cols() != u.cols()) {
        throw ShapeMismatch("riemannian_grad_metric: gradient shape");
      }
      return TangentVec::unchecked(
          x, euclidean_grad - u * euclidean_grad.transpose() * u);
    }
    default:
      return project_tangent(x, euclidean_grad);
  }
}

RgdTrace rgd_minimize(const Objective& f, const Point& x0,
                      const RgdConfig& cfg) {
  cfg.validate();
  const ManifoldSpec& spec = x0.spec();
  RgdTrace trace{0, {}, {}, x0, false};
  Point x = x0;
  ObjectiveEval cur = evaluate(f, x);

  for (int it = 0; it < cfg.max_iter; ++it) {
    const Matrix grad = project_tangent(spec, x.data(), cur.euclidean_grad);
    const double gn = grad.norm();
    trace.grad_norms.push_back(gn);
    trace.objective_values.push_back(cur.value);
    trace.iterates_count = it + 1;
    trace.final_point = x;
    if (gn < cfg.grad_tol) {
      trace.converged = true;
      return trace;
    }
    if (it + 1 == cfg.max_iter) break;

    double alpha = cfg.step_size;
    Point next = x;
    ObjectiveEval next_eval;
    for (;;) {
      const TangentVec step = TangentVec::unchecked(x, -alpha * grad);
      next = project_to_manifold(spec, retract(x, step).data());
      next_eval = evaluate(f, next);
      if (!cfg.backtracking) break;
      if (next_eval.value <= cur.value - 1e-4 * alpha * gn * gn) break;
      alpha *= 0.5;
      if (alpha < 1e-20 * cfg.step_size) {
        // No step decreases f: stationary to working precision.
        next = x;
        next_eval = cur;
        break;
      }
    }
    x = std::move(next);
    cur = std::move(next_eval);
    if ((it + 1) % 10 == 0) validate_point(spec, x.data(), 1e-8);
  }

  if (cfg.require_convergence) throw RgdNoConvergence(std::move(trace));
  return trace;
}

}  // namespace riemdr
