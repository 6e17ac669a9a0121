#include "riemdr/pga.h"

#include <algorithm>

#include "riemdr/errors.h"
#include "riemdr/kernels.h"
#include "riemdr/spectral.h"

namespace riemdr {

PgaModel pga_fit(const LabeledDataset& data, int k, FrechetOptions opts) {
  if (data.size() == 0) throw InvalidArgument("pga_fit: empty dataset");
  const int d = data.spec.vec_dim();
  if (k < 1 || k > d) throw InvalidArgument("pga_fit: need 1 <= k <= d");

  const Point base = frechet_mean(data.points, opts);
  const TangentDataset td = lift(data.points, base);
  const EigPair eig = sym_eig(tangent_covariance(td));
  Vector values = eig.values.head(k);
  for (Index i = 0; i < values.size(); ++i) values(i) = std::max(values(i), 0.0);
  return {base, eig.vectors.leftCols(k), values};
}

Matrix pga_transform(const PgaModel& m, std::span<const Point> points) {
  return (m.basis.transpose() * kernels::lift(m.base, points)).transpose();
}

std::vector<Point> pga_reconstruct(const PgaModel& m, const Matrix& coords) {
  if (coords.cols() != m.basis.cols()) {
    throw ShapeMismatch("pga_reconstruct: coordinate width != k");
  }
  const ManifoldSpec& spec = m.base.spec();
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(coords.rows()));
  for (Index i = 0; i < coords.rows(); ++i) {
    const Vector z = m.basis * coords.row(i).transpose();
    const Matrix v = project_tangent(spec, m.base.data(), devectorize(spec, z));
    out.push_back(
        project_to_manifold(spec, exp_map(spec, m.base.data(), v)));
  }
  return out;
}

}  // namespace riemdr
