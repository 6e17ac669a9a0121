#include "riemdr/dataset.h"

#include <algorithm>

#include "riemdr/errors.h"

namespace riemdr {

int LabeledDataset::num_classes() const {
  if (labels.empty()) return 0;
  return *std::max_element(labels.begin(), labels.end()) + 1;
}

std::vector<std::size_t> LabeledDataset::class_counts() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(num_classes()), 0);
  for (int y : labels) ++counts[static_cast<std::size_t>(y)];
  return counts;
}

void LabeledDataset::validate() const {
  if (points.size() != labels.size()) {
    throw LengthMismatch("dataset '" + name + "': " +
                         std::to_string(points.size()) + " points but " +
                         std::to_string(labels.size()) + " labels");
  }
  for (const Point& p : points) {
    if (!(p.spec() == spec)) {
      throw ShapeMismatch("dataset '" + name + "': point spec " +
                          p.spec().to_string() + " differs from " +
                          spec.to_string());
    }
  }
  for (int y : labels) {
    if (y < 0) throw InvalidArgument("dataset '" + name + "': negative label");
  }
  const auto counts = class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) {
      throw InvalidArgument("dataset '" + name + "': class " +
                            std::to_string(c) + " is empty");
    }
  }
}

LabeledDataset LabeledDataset::subset(
    std::span<const std::size_t> indices) const {
  LabeledDataset out{spec, {}, {}, name};
  out.points.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) {
    out.points.push_back(points.at(i));
    out.labels.push_back(labels.at(i));
  }
  return out;
}

LabeledDataset LabeledDataset::as_euclidean() const {
  const ManifoldSpec e = ManifoldSpec::euclidean(spec.vec_dim());
  LabeledDataset out{e, {}, labels, name};
  out.points.reserve(points.size());
  for (const Point& p : points) {
    out.points.push_back(Point::unchecked(e, vectorize(spec, p.data())));
  }
  return out;
}

Matrix LabeledDataset::feature_matrix() const {
  Matrix x(static_cast<Index>(points.size()), spec.vec_dim());
  for (std::size_t i = 0; i < points.size(); ++i) {
    x.row(static_cast<Index>(i)) = vectorize(spec, points[i].data()).transpose();
  }
  return x;
}

}  // namespace riemdr
