#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "riemdr/manifold.h"

namespace riemdr {

/// Points on one manifold with integer class labels in [0, C).
struct LabeledDataset {
  ManifoldSpec spec;
  std::vector<Point> points;
  std::vector<int> labels;
  std::string name;

  std::size_t size() const { return points.size(); }
  /// C = max label + 1 (0 for an empty dataset).
  int num_classes() const;
  std::vector<std::size_t> class_counts() const;

  /// Throws LengthMismatch / InvalidArgument when the invariants fail:
  /// equal lengths, labels in [0, C), every class nonempty, shared spec.
  void validate() const;

  LabeledDataset subset(std::span<const std::size_t> indices) const;
  /// Same samples viewed as Euclidean(vec_dim) vectors.
  LabeledDataset as_euclidean() const;
  /// Row i is the vectorized point i.
  Matrix feature_matrix() const;
};

}  // namespace riemdr
