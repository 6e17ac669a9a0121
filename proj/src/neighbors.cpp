#include "riemdr/neighbors.h"

#include <algorithm>
#include <numeric>

#include "riemdr/errors.h"

namespace riemdr {

std::vector<Index> k_smallest(const Vector& dist, int k, Index skip) {
  std::vector<Index> idx;
  idx.reserve(static_cast<std::size_t>(dist.size()));
  for (Index j = 0; j < dist.size(); ++j) {
    if (j != skip) idx.push_back(j);
  }
  if (k < 0 || static_cast<std::size_t>(k) > idx.size()) {
    throw InvalidArgument("k_smallest: k exceeds the number of candidates");
  }
  auto less = [&](Index a, Index b) {
    return dist(a) < dist(b) || (dist(a) == dist(b) && a < b);
  };
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), less);
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

std::vector<std::vector<Index>> nearest_neighbors(const Matrix& dist, int k) {
  if (dist.rows() != dist.cols()) {
    throw ShapeMismatch("nearest_neighbors: distance matrix not square");
  }
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(dist.rows()));
  for (Index i = 0; i < dist.rows(); ++i) {
    out[static_cast<std::size_t>(i)] =
        k_smallest(dist.row(i).transpose(), k, i);
  }
  return out;
}

}  // namespace riemdr
