#include "riemdr/rrpca.h"

#include <algorithm>
#include <cmath>

#include "riemdr/errors.h"
#include "riemdr/kernels.h"
#include "riemdr/spectral.h"

namespace riemdr {

RpcaDecomposition rpca_decompose(const Matrix& z, double lambda, int iters) {
  if (iters < 1) throw InvalidArgument("rpca_decompose: iters < 1");
  const Index rows = z.rows();
  const Index cols = z.cols();
  if (lambda <= 0.0) {
    lambda = 1.0 / std::sqrt(static_cast<double>(std::max(rows, cols)));
  }
  RpcaDecomposition out{Matrix::Zero(rows, cols), Matrix::Zero(rows, cols),
                        0, 0.0};
  const double z_norm = z.norm();
  if (z_norm == 0.0) {
    out.iterations = 1;
    return out;
  }

  Eigen::BDCSVD<Matrix> top(z);
  const double spectral = top.singularValues()(0);
  const double dual_scale =
      std::max(spectral, z.cwiseAbs().maxCoeff() / lambda);
  Matrix y = z / dual_scale;
  double rho = 1.25 / spectral;
  const double rho_max = rho * 1e7;

  Matrix& l = out.low_rank;
  Matrix& s = out.sparse;
  for (int it = 0; it < iters; ++it) {
    s = shrink(z - l + y / rho, lambda / rho);
    l = svt(z - s + y / rho, 1.0 / rho);
    const Matrix r = z - l - s;
    y += rho * r;
    rho = std::min(rho * 1.1, rho_max);
    out.iterations = it + 1;
    out.residual = r.norm() / z_norm;
  }
  return out;
}

RrpcaResult rrpca_fit(const LabeledDataset& data, double lambda, int iters,
                      FrechetOptions opts) {
  if (data.size() == 0) throw InvalidArgument("rrpca_fit: empty dataset");
  const ManifoldSpec& spec = data.spec;
  const Point base = frechet_mean(data.points, opts);
  const Matrix z = kernels::lift(base, data.points);
  RpcaDecomposition dec = rpca_decompose(z, lambda, iters);

  std::vector<Point> cleaned;
  cleaned.reserve(data.size());
  for (Index i = 0; i < z.cols(); ++i) {
    const Matrix v = project_tangent(spec, base.data(),
                                     devectorize(spec, dec.low_rank.col(i)));
    cleaned.push_back(project_to_manifold(spec, exp_map(spec, base.data(), v)));
  }
  return {std::move(dec.low_rank), std::move(dec.sparse), base,
          std::move(cleaned), dec.iterations, dec.residual};
}

PgaModel rrpca_projection(const RrpcaResult& r, int k) {
  const Index d = r.low_rank.rows();
  if (k < 1 || k > d) throw InvalidArgument("rrpca_projection: bad k");
  const double n = static_cast<double>(std::max<Index>(1, r.low_rank.cols()));
  // Left singular vectors of L are the eigenvectors of L L^T / N.
  Matrix c = r.low_rank * r.low_rank.transpose() / n;
  const EigPair eig = sym_eig(0.5 * (c + c.transpose()));
  Vector values = eig.values.head(k).cwiseMax(0.0);
  return {r.base, eig.vectors.leftCols(k), values};
}

}  // namespace riemdr
