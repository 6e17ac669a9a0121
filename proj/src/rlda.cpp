#include "riemdr/rlda.h"

#include <algorithm>
#include <cmath>

#include "riemdr/errors.h"
#include "riemdr/kernels.h"
#include "riemdr/spectral.h"

namespace riemdr {

Scatter scatter_matrices(const Matrix& z, std::span<const int> labels,
                         int num_classes) {
  const Index dim = z.rows();
  if (static_cast<Index>(labels.size()) != z.cols()) {
    throw LengthMismatch("scatter_matrices: labels and columns differ");
  }
  Matrix means = Matrix::Zero(dim, num_classes);
  std::vector<double> counts(static_cast<std::size_t>(num_classes), 0.0);
  for (Index i = 0; i < z.cols(); ++i) {
    means.col(labels[i]) += z.col(i);
    counts[static_cast<std::size_t>(labels[i])] += 1.0;
  }
  for (int c = 0; c < num_classes; ++c) {
    if (counts[static_cast<std::size_t>(c)] == 0.0) {
      throw InvalidArgument("scatter_matrices: empty class");
    }
    means.col(c) /= counts[static_cast<std::size_t>(c)];
  }
  const Vector overall = z.rowwise().mean();

  Matrix centered(dim, z.cols());
  for (Index i = 0; i < z.cols(); ++i) centered.col(i) = z.col(i) - means.col(labels[i]);
  Matrix between_cols(dim, num_classes);
  for (int c = 0; c < num_classes; ++c) {
    between_cols.col(c) =
        std::sqrt(counts[static_cast<std::size_t>(c)]) * (means.col(c) - overall);
  }
  Matrix sw = centered * centered.transpose();
  Matrix sb = between_cols * between_cols.transpose();
  return {0.5 * (sw + sw.transpose()), 0.5 * (sb + sb.transpose()),
          std::move(means)};
}

RldaModel rlda_fit(const LabeledDataset& data, int d_out, FrechetOptions opts) {
  data.validate();
  const int classes = data.num_classes();
  if (classes < 2) throw InvalidArgument("rlda_fit: need at least 2 classes");
  if (d_out < 1 || d_out > classes - 1) {
    throw InvalidArgument("rlda_fit: d_out must lie in [1, C - 1]");
  }
  const Point base = frechet_mean(data.points, opts);
  const Matrix z = kernels::lift(base, data.points);
  Scatter s = scatter_matrices(z, data.labels, classes);

  const double dim = static_cast<double>(z.rows());
  double eps = 1e-6 * s.within.trace() / dim;
  if (!(eps > 0.0)) eps = 1e-6 * std::max(s.between.trace() / dim, 1.0);
  Matrix sw = s.within;
  sw.diagonal().array() += eps;

  EigPair eig;
  try {
    eig = gen_eig(s.between, sw);
  } catch (const NotPositiveDefinite& e) {
    throw SingularScatter(std::string("rlda_fit: ") + e.what());
  }
  return {base, eig.vectors.leftCols(d_out), std::move(s.class_means),
          eig.values.head(d_out)};
}

Matrix rlda_transform(const RldaModel& m, std::span<const Point> points) {
  return (m.projection.transpose() * kernels::lift(m.base, points)).transpose();
}

std::vector<Point> rlda_reconstruct(const RldaModel& m, const Matrix& coords) {
  if (coords.cols() != m.projection.cols()) {
    throw ShapeMismatch("rlda_reconstruct: coordinate width != d_out");
  }
  const ManifoldSpec& spec = m.base.spec();
  std::vector<Point> out;
  for (Index i = 0; i < coords.rows(); ++i) {
    const Vector z = m.projection * coords.row(i).transpose();
    const Matrix v = project_tangent(spec, m.base.data(), devectorize(spec, z));
    out.push_back(project_to_manifold(spec, exp_map(spec, m.base.data(), v)));
  }
  return out;
}

}  // namespace riemdr
