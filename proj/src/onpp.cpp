#include "riemdr/onpp.h"

#include <cmath>
#include <sstream>

#include "riemdr/errors.h"
#include "riemdr/kernels.h"
#include "riemdr/neighbors.h"

namespace riemdr {

Vector reconstruction_weights(const Matrix& z, int tangent_dim) {
  const Index k = z.cols();
  if (k < 1) throw InvalidArgument("reconstruction_weights: no neighbors");
  Matrix g = z.transpose() * z;
  const double tr = g.trace();

  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  const bool singular = ev(0) <= 1e-12 * std::max(ev(k - 1), 0.0);
  if (k > tangent_dim || singular) {
    g.diagonal().array() += 1e-6 * tr;
  }

  Eigen::LDLT<Matrix> ldlt(g);
  const Vector w = ldlt.solve(Vector::Ones(k));
  const double sum = w.sum();
  if (ldlt.info() != Eigen::Success || !w.allFinite() || !(std::abs(sum) > 0) ||
      !(g.diagonal().minCoeff() > 0.0)) {
    throw DegenerateNeighborhood(
        "reconstruction_weights: neighborhood Gram matrix is singular");
  }
  return w / sum;
}

SparseMatrix onpp_weights(const LabeledDataset& data, int k_nn) {
  const Index n = static_cast<Index>(data.size());
  if (k_nn < 1 || k_nn >= n) {
    throw InvalidArgument("onpp_weights: need 1 <= k_nn < N");
  }
  const ManifoldSpec& spec = data.spec;
  const auto nbrs = nearest_neighbors(kernels::pairwise_distances(data.points),
                                      k_nn);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(n * k_nn));
  for (Index i = 0; i < n; ++i) {
    const auto& nb = nbrs[static_cast<std::size_t>(i)];
    Matrix z(spec.vec_dim(), k_nn);
    const Matrix& xi = data.points[i].data();
    for (int j = 0; j < k_nn; ++j) {
      z.col(j) = vectorize(spec, log_map(spec, xi, data.points[nb[j]].data()));
    }
    Vector w;
    try {
      w = reconstruction_weights(z, spec.intrinsic_dim());
    } catch (const DegenerateNeighborhood& e) {
      std::ostringstream os;
      os << "onpp_weights: point " << i << ": " << e.what();
      throw DegenerateNeighborhood(os.str());
    }
    for (int j = 0; j < k_nn; ++j) triplets.emplace_back(i, nb[j], w(j));
  }
  SparseMatrix out(n, n);
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

Matrix onpp_quadratic_form(const Matrix& x, const SparseMatrix& w) {
  const Matrix e = x - x * w.transpose();
  Matrix a = e * e.transpose();
  return 0.5 * (a + a.transpose());
}

OnppModel onpp_fit(const LabeledDataset& data, int d_out, int k_nn,
                   const OnppOptions& opts) {
  const int dim = data.spec.vec_dim();
  if (d_out < 1 || d_out > dim) throw InvalidArgument("onpp_fit: bad d_out");
  const Point base = frechet_mean(data.points, opts.frechet);
  const Matrix x = kernels::lift(base, data.points);
  if (d_out > std::min<Index>(x.rows(), x.cols())) {
    throw InvalidArgument("onpp_fit: d_out exceeds min(dim, N)");
  }
  SparseMatrix w = onpp_weights(data, k_nn);
  const Matrix a_full = onpp_quadratic_form(x, w);

  // Orthonormal basis of the lifted data's range (at least d_out columns).
  Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeThinU);
  const Vector& sv = svd.singularValues();
  Index r = 0;
  while (r < sv.size() && sv(r) > 1e-10 * sv(0)) ++r;
  r = std::max<Index>(r, d_out);
  const Matrix p = svd.matrixU().leftCols(r);
  const Matrix a = p.transpose() * a_full * p;

  OnppModel model{base, std::move(w), Matrix(), {}, false};
  const Matrix u0 = Matrix::Identity(r, d_out);
  const double scale = Eigen::SelfAdjointEigenSolver<Matrix>(
                           0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly)
                           .eigenvalues()
                           .cwiseAbs()
                           .maxCoeff();
  if (!(scale > 0.0)) {
    model.projection = p * u0;
    model.objective_trace = {0.0};
    model.converged = true;
    return model;
  }

  const Matrix as = a / scale;
  Objective f = [&as](const Matrix& u) {
    const Matrix au = as * u;
    return ObjectiveEval{(u.transpose() * au).trace(), 2.0 * au};
  };
  const Point start = Point::unchecked(ManifoldSpec::stiefel(d_out, static_cast<int>(r)), u0);
  const RgdTrace trace = rgd_minimize(f, start, opts.rgd);

  model.projection = p * trace.final_point.data();
  model.objective_trace.reserve(trace.objective_values.size());
  for (double v : trace.objective_values) {
    model.objective_trace.push_back(v * scale);
  }
  model.converged = trace.converged;
  return model;
}

Matrix onpp_transform(const OnppModel& m, std::span<const Point> points) {
  return (m.projection.transpose() * kernels::lift(m.base, points))
      .transpose();
}

}  // namespace riemdr
