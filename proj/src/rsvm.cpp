#include "riemdr/rsvm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "riemdr/errors.h"
#include "riemdr/kernels.h"

namespace riemdr {
namespace {

double median_offdiag(const Matrix& d) {
  std::vector<double> v;
  for (Index j = 0; j < d.cols(); ++j)
    for (Index i = 0; i < j; ++i) v.push_back(d(i, j));
  if (v.empty()) return 1.0;
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  double m = *mid;
  if (v.size() % 2 == 0) m = 0.5 * (m + *std::max_element(v.begin(), mid));
  return m > 0.0 ? m : 1.0;
}

Matrix geodesic_kernel(const Matrix& d, double sigma) {
  return (-d.array().square() / (2.0 * sigma * sigma)).exp().matrix();
}

}  // namespace

SvmDual solve_svm_dual(const Matrix& k, std::span<const int> y, double c_reg,
                       double tol) {
  const Index n = k.rows();
  if (k.cols() != n || static_cast<Index>(y.size()) != n) {
    throw ShapeMismatch("solve_svm_dual: kernel and label sizes differ");
  }
  if (!(c_reg > 0.0)) throw InvalidArgument("solve_svm_dual: C must be > 0");
  for (int v : y) {
    if (v != 1 && v != -1) throw InvalidArgument("solve_svm_dual: labels must be +-1");
  }

  auto q = [&](Index i, Index j) { return y[i] * y[j] * k(i, j); };
  SvmDual out{Vector::Zero(n), 0.0, 0, 0.0};
  Vector& a = out.alpha;
  // Gradient of 1/2 a^T Q a - sum a.
  Vector g = -Vector::Ones(n);

  auto in_up = [&](Index t) {
    return (y[t] == 1 && a(t) < c_reg) || (y[t] == -1 && a(t) > 0.0);
  };
  auto in_low = [&](Index t) {
    return (y[t] == 1 && a(t) > 0.0) || (y[t] == -1 && a(t) < c_reg);
  };

  const long long max_updates = 10LL * n * n;
  constexpr double kTau = 1e-12;
  for (long long it = 0;; ++it) {
    Index i = -1;
    Index j = -1;
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    for (Index t = 0; t < n; ++t) {
      const double v = -y[t] * g(t);
      if (in_up(t) && v > gmax) {
        gmax = v;
        i = t;
      }
      if (in_low(t) && v < gmin) {
        gmin = v;
        j = t;
      }
    }
    out.gap = (i < 0 || j < 0) ? 0.0 : gmax - gmin;
    out.iterations = static_cast<int>(std::min<long long>(it, INT32_MAX));
    if (out.gap < tol) break;
    if (it >= max_updates) {
      std::ostringstream os;
      os << "solve_svm_dual: no convergence, KKT violation " << out.gap;
      throw NoConvergence(os.str(), out.iterations, out.gap);
    }

    // Two-variable subproblem along y_i d_i + y_j d_j = 0 (libsvm form).
    const double old_ai = a(i);
    const double old_aj = a(j);
    double quad = q(i, i) + q(j, j) - 2.0 * y[i] * y[j] * q(i, j);
    if (quad <= 0.0) quad = kTau;
    if (y[i] != y[j]) {
      const double delta = (-g(i) - g(j)) / quad;
      const double diff = a(i) - a(j);
      a(i) += delta;
      a(j) += delta;
      if (diff > 0.0) {
        if (a(j) < 0.0) {
          a(j) = 0.0;
          a(i) = diff;
        }
      } else if (a(i) < 0.0) {
        a(i) = 0.0;
        a(j) = -diff;
      }
      if (diff > 0.0) {
        if (a(i) > c_reg) {
          a(i) = c_reg;
          a(j) = c_reg - diff;
        }
      } else if (a(j) > c_reg) {
        a(j) = c_reg;
        a(i) = c_reg + diff;
      }
    } else {
      const double delta = (g(i) - g(j)) / quad;
      const double sum = a(i) + a(j);
      a(i) -= delta;
      a(j) += delta;
      if (sum > c_reg) {
        if (a(i) > c_reg) {
          a(i) = c_reg;
          a(j) = sum - c_reg;
        }
      } else if (a(j) < 0.0) {
        a(j) = 0.0;
        a(i) = sum;
      }
      if (sum > c_reg) {
        if (a(j) > c_reg) {
          a(j) = c_reg;
          a(i) = sum - c_reg;
        }
      } else if (a(i) < 0.0) {
        a(i) = 0.0;
        a(j) = sum;
      }
    }
    const double di = a(i) - old_ai;
    const double dj = a(j) - old_aj;
    for (Index t = 0; t < n; ++t) g(t) += q(t, i) * di + q(t, j) * dj;
  }

  // Offset: average over free variables, else midpoint of the feasible range.
  double sum_free = 0.0;
  int n_free = 0;
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  for (Index t = 0; t < n; ++t) {
    const double yg = y[t] * g(t);
    if (a(t) >= c_reg) {
      if (y[t] == -1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (a(t) <= 0.0) {
      if (y[t] == 1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  const double rho = n_free > 0 ? sum_free / n_free : 0.5 * (ub + lb);
  out.b = -rho;
  return out;
}

RsvmModel rsvm_fit(std::span<const Point> points, std::span<const int> y,
                   const RsvmOptions& opts) {
  if (points.empty()) throw InvalidArgument("rsvm_fit: no points");
  if (points.size() != y.size()) throw LengthMismatch("rsvm_fit: labels");
  const bool linear = opts.mode == SvmMode::TangentLinear;
  RsvmModel m{.mode = opts.mode,
              .base = linear ? frechet_mean(points, opts.frechet) : points[0],
              .c_reg = opts.c_reg};

  Matrix k;
  Matrix z;
  if (linear) {
    z = kernels::lift(m.base, points);
    k = z.transpose() * z;
  } else {
    const Matrix d = kernels::pairwise_distances(points);
    m.sigma = opts.sigma > 0.0 ? opts.sigma : median_offdiag(d);
    k = geodesic_kernel(d, m.sigma);
    k.diagonal().array() += 1e-10;
    m.min_gram_eigenvalue =
        Eigen::SelfAdjointEigenSolver<Matrix>(k, Eigen::EigenvaluesOnly)
            .eigenvalues()(0);
  }

  const SvmDual dual = solve_svm_dual(k, y, opts.c_reg, opts.tol);
  m.b = dual.b;
  m.iterations = dual.iterations;
  std::vector<double> alphas;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (dual.alpha(static_cast<Index>(i)) > 0.0) {
      alphas.push_back(dual.alpha(static_cast<Index>(i)));
      m.support_points.push_back(points[i]);
      m.support_labels.push_back(y[i]);
    }
  }
  m.alphas = Eigen::Map<const Vector>(alphas.data(),
                                      static_cast<Index>(alphas.size()));
  if (opts.mode == SvmMode::TangentLinear) {
    Vector ay(dual.alpha.size());
    for (Index i = 0; i < ay.size(); ++i) ay(i) = dual.alpha(i) * y[i];
    m.w = z * ay;
  }
  return m;
}

RsvmModel rsvm_fit(const LabeledDataset& data, const RsvmOptions& opts) {
  data.validate();
  if (data.num_classes() != 2) {
    throw InvalidArgument("rsvm_fit: dataset must have exactly 2 classes");
  }
  std::vector<int> y(data.labels.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = data.labels[i] == 1 ? 1 : -1;
  return rsvm_fit(data.points, y, opts);
}

double rsvm_decision(const RsvmModel& m, const Point& x) {
  const ManifoldSpec& spec = m.base.spec();
  if (!(x.spec() == spec)) throw ShapeMismatch("rsvm_decision: spec mismatch");
  if (m.mode == SvmMode::TangentLinear) {
    return m.w.dot(vectorize(spec, log_map(spec, m.base.data(), x.data()))) +
           m.b;
  }
  double f = m.b;
  for (std::size_t i = 0; i < m.support_points.size(); ++i) {
    const double d = geodesic_dist(spec, m.support_points[i].data(), x.data());
    f += m.alphas(static_cast<Index>(i)) * m.support_labels[i] *
         std::exp(-d * d / (2.0 * m.sigma * m.sigma));
  }
  return f;
}

int rsvm_predict(const RsvmModel& m, const Point& x) {
  return rsvm_decision(m, x) >= 0.0 ? 1 : -1;
}

}  // namespace riemdr
