#pragma once

#include <span>
#include <string>
#include <vector>

#include "riemdr/dataset.h"

namespace riemdr {

enum class GraphKind { Distance, Heat };

/// Symmetric sparse neighborhood graph with zero diagonal.
struct NeighborGraph {
  Index n = 0;
  SparseMatrix edges;
  GraphKind kind = GraphKind::Distance;
  /// Heat-kernel scale (Heat graphs only).
  double t = 0.0;
};

/// Union-symmetrized kNN graph with geodesic edge lengths. Neighbors are
/// ranked by (distance, index).
NeighborGraph knn_graph(const LabeledDataset& data, int k);
/// Same, from a precomputed symmetric distance matrix.
NeighborGraph knn_graph(const Matrix& dist, int k);

/// exp(-d^2 / t) on every edge, then (W + W^T) / 2. t <= 0 selects the
/// median squared edge length.
NeighborGraph heat_weights(const NeighborGraph& g, double t = 0.0);

/// Sizes of the connected components, largest first.
std::vector<std::size_t> component_sizes(const SparseMatrix& w);
/// Throws DisconnectedGraph when there is more than one component.
void require_connected(const SparseMatrix& w);

struct EmbeddingResult {
  Matrix coords;
  Vector spectrum;
  std::string method;
};

/// Generalized eigenvectors of (L, D), L = D - W, for the d_out smallest
/// nonzero eigenvalues: the graph must be connected, so only the trivial
/// constant eigenvector is dropped. Columns satisfy Y^T D Y = I. With
/// `normalized`, uses I - D^{-1/2} W D^{-1/2} and maps back by D^{-1/2}.
EmbeddingResult laplacian_embed(const NeighborGraph& g, int d_out,
                                bool normalized = false);

/// Out-of-sample coordinates: heat-weighted average of the embeddings of the
/// k nearest training points. Throws NoNeighbors when every weight is 0.
Vector nystrom_extend(std::span<const Point> train, const Matrix& coords,
                      const Point& x_new, int k, double t);
Matrix nystrom_extend(std::span<const Point> train, const Matrix& coords,
                      std::span<const Point> x_new, int k, double t);

/// Classical MDS of a distance matrix: B = -1/2 H D^2 H, Y = V Lambda^{1/2}
/// over the top d_out eigenvalues. Columns for non-positive eigenvalues are
/// zero; throws NoPositiveSpectrum if the largest eigenvalue is <= 0.
EmbeddingResult classical_mds(const Matrix& dist, int d_out);

/// Geodesic kNN graph, all-pairs shortest paths, classical MDS.
EmbeddingResult isomap_embed(const LabeledDataset& data, int k, int d_out);
/// Same, from a precomputed geodesic distance matrix.
EmbeddingResult isomap_embed(const Matrix& dist, int k, int d_out);

/// Writes "y0,y1,..." then one row per point.
void write_embedding_csv(const std::string& path, const Matrix& coords);

}  // namespace riemdr
