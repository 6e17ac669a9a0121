#pragma once

#include <vector>

#include "riemdr/types.h"

namespace riemdr {

/// Indices of the k smallest entries of `dist`, ordered by (distance, index).
/// `skip` (if >= 0) is excluded, which is how a point drops itself.
std::vector<Index> k_smallest(const Vector& dist, int k, Index skip = -1);

/// Row-wise k_smallest over a square distance matrix, skipping the diagonal.
std::vector<std::vector<Index>> nearest_neighbors(const Matrix& dist, int k);

}  // namespace riemdr
