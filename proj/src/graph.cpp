#include "riemdr/graph.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <queue>

#include "riemdr/errors.h"
#include "riemdr/kernels.h"
#include "riemdr/neighbors.h"
#include "riemdr/spectral.h"

namespace riemdr {

NeighborGraph knn_graph(const Matrix& dist, int k) {
  const Index n = dist.rows();
  if (k < 1 || k >= n) throw InvalidArgument("knn_graph: need 1 <= k < N");
  const auto nbrs = nearest_neighbors(dist, k);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(2 * n * k));
  std::vector<std::vector<Index>> adjacency(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j : nbrs[static_cast<std::size_t>(i)]) {
      adjacency[static_cast<std::size_t>(i)].push_back(j);
      adjacency[static_cast<std::size_t>(j)].push_back(i);
    }
  }
  for (Index i = 0; i < n; ++i) {
    auto& adj = adjacency[static_cast<std::size_t>(i)];
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    // Both (i, j) and (j, i) read the same entry of the symmetric matrix.
    for (Index j : adj) {
      const double d = i < j ? dist(i, j) : dist(j, i);
      triplets.emplace_back(j, i, d);
    }
  }
  NeighborGraph g;
  g.n = n;
  g.edges.resize(n, n);
  g.edges.setFromTriplets(triplets.begin(), triplets.end());
  g.kind = GraphKind::Distance;
  return g;
}

NeighborGraph knn_graph(const LabeledDataset& data, int k) {
  return knn_graph(kernels::pairwise_distances(data.points), k);
}

NeighborGraph heat_weights(const NeighborGraph& g, double t) {
  if (g.kind != GraphKind::Distance) {
    throw InvalidArgument("heat_weights: expects a distance graph");
  }
  if (t <= 0.0) {
    std::vector<double> sq;
    sq.reserve(static_cast<std::size_t>(g.edges.nonZeros()));
    for (Index c = 0; c < g.edges.outerSize(); ++c)
      for (SparseMatrix::InnerIterator it(g.edges, c); it; ++it)
        if (it.row() < it.col()) sq.push_back(it.value() * it.value());
    if (sq.empty()) throw InvalidArgument("heat_weights: graph has no edges");
    auto mid = sq.begin() + static_cast<std::ptrdiff_t>(sq.size() / 2);
    std::nth_element(sq.begin(), mid, sq.end());
    t = *mid;
    if (sq.size() % 2 == 0) {
      t = 0.5 * (t + *std::max_element(sq.begin(), mid));
    }
    if (!(t > 0.0)) t = 1.0;
  }
  SparseMatrix w = g.edges;
  for (Index c = 0; c < w.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(w, c); it; ++it)
      it.valueRef() = std::exp(-it.value() * it.value() / t);
  SparseMatrix wt = w.transpose();
  NeighborGraph out;
  out.n = g.n;
  out.edges = 0.5 * (w + wt);
  out.kind = GraphKind::Heat;
  out.t = t;
  return out;
}

std::vector<std::size_t> component_sizes(const SparseMatrix& w) {
  const Index n = w.cols();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<std::size_t> sizes;
  for (Index s = 0; s < n; ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    std::size_t count = 0;
    std::queue<Index> q;
    q.push(s);
    label[static_cast<std::size_t>(s)] = id;
    while (!q.empty()) {
      const Index u = q.front();
      q.pop();
      ++count;
      for (SparseMatrix::InnerIterator it(w, u); it; ++it) {
        auto& l = label[static_cast<std::size_t>(it.row())];
        if (l < 0) {
          l = id;
          q.push(it.row());
        }
      }
    }
    sizes.push_back(count);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

void require_connected(const SparseMatrix& w) {
  auto sizes = component_sizes(w);
  if (sizes.size() > 1) throw DisconnectedGraph(std::move(sizes));
}

EmbeddingResult laplacian_embed(const NeighborGraph& g, int d_out,
                                bool normalized) {
  const Index n = g.n;
  if (d_out < 1 || d_out >= n) {
    throw InvalidArgument("laplacian_embed: need 1 <= d_out < N");
  }
  require_connected(g.edges);
  const Matrix w = Matrix(g.edges);
  const Vector deg = w.rowwise().sum();
  Matrix lap = -w;
  lap.diagonal() += deg;

  EigPair eig;
  Vector inv_sqrt_deg;
  if (normalized) {
    inv_sqrt_deg = deg.cwiseSqrt().cwiseInverse();
    Matrix sym = inv_sqrt_deg.asDiagonal() * lap * inv_sqrt_deg.asDiagonal();
    eig = sym_eig(0.5 * (sym + sym.transpose()));
  } else {
    eig = gen_eig(lap, Matrix(deg.asDiagonal()));
  }

  // Values arrive descending. The graph is connected, so the null space is
  // exactly the constant vector at the bottom; skip it and keep the next
  // d_out. Near-zero values above it are genuine slow modes of weakly
  // coupled clusters, not numerical zeros.
  std::vector<Index> keep;
  for (Index i = n - 2; i >= 0 && static_cast<int>(keep.size()) < d_out; --i) {
    keep.push_back(i);
  }
  if (static_cast<int>(keep.size()) < d_out) {
    throw InvalidArgument("laplacian_embed: fewer nonzero eigenvalues than d_out");
  }

  EmbeddingResult out{Matrix(n, d_out), Vector(d_out), "R-LE"};
  for (int c = 0; c < d_out; ++c) {
    const Index i = keep[static_cast<std::size_t>(c)];
    out.spectrum(c) = eig.values(i);
    if (normalized) {
      out.coords.col(c) = inv_sqrt_deg.asDiagonal() * eig.vectors.col(i);
    } else {
      out.coords.col(c) = eig.vectors.col(i);
    }
  }
  return out;
}

Vector nystrom_extend(std::span<const Point> train, const Matrix& coords,
                      const Point& x_new, int k, double t) {
  return nystrom_extend(train, coords, std::span<const Point>(&x_new, 1), k, t)
      .row(0)
      .transpose();
}

Matrix nystrom_extend(std::span<const Point> train, const Matrix& coords,
                      std::span<const Point> x_new, int k, double t) {
  if (static_cast<Index>(train.size()) != coords.rows()) {
    throw ShapeMismatch("nystrom_extend: coords rows != training size");
  }
  if (!(t > 0.0)) throw InvalidArgument("nystrom_extend: t must be > 0");
  const int kk = std::min<int>(k, static_cast<int>(train.size()));
  const Matrix d = kernels::cross_distances(x_new, train);
  Matrix out(d.rows(), coords.cols());
  for (Index r = 0; r < d.rows(); ++r) {
    const Vector dr = d.row(r).transpose();
    const auto nb = k_smallest(dr, kk);
    Vector acc = Vector::Zero(coords.cols());
    double total = 0.0;
    for (Index j : nb) {
      const double wj = std::exp(-dr(j) * dr(j) / t);
      acc += wj * coords.row(j).transpose();
      total += wj;
    }
    if (!(total > 0.0)) {
      throw NoNeighbors("nystrom_extend: all kernel weights underflow to 0");
    }
    out.row(r) = (acc / total).transpose();
  }
  return out;
}

EmbeddingResult classical_mds(const Matrix& dist, int d_out) {
  const Index n = dist.rows();
  if (d_out < 1 || d_out > n) throw InvalidArgument("classical_mds: bad d_out");
  const Matrix sq = dist.cwiseProduct(dist);
  const Vector row_mean = sq.rowwise().mean();
  const Vector col_mean = sq.colwise().mean().transpose();
  const double all_mean = sq.mean();
  Matrix b(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      b(i, j) = -0.5 * (sq(i, j) - row_mean(i) - col_mean(j) + all_mean);
  const EigPair eig = sym_eig(0.5 * (b + b.transpose()));
  if (!(eig.values(0) > 0.0)) {
    throw NoPositiveSpectrum("classical_mds: no positive eigenvalue");
  }
  EmbeddingResult out{Matrix::Zero(n, d_out), eig.values.head(d_out), "MDS"};
  for (int c = 0; c < d_out; ++c) {
    if (eig.values(c) > 0.0) {
      out.coords.col(c) = eig.vectors.col(c) * std::sqrt(eig.values(c));
    }
  }
  return out;
}

EmbeddingResult isomap_embed(const Matrix& dist, int k, int d_out) {
  const NeighborGraph g = knn_graph(dist, k);
  require_connected(g.edges);
  EmbeddingResult out = classical_mds(kernels::shortest_paths(g.edges), d_out);
  out.method = "R-Isomap";
  return out;
}

EmbeddingResult isomap_embed(const LabeledDataset& data, int k, int d_out) {
  return isomap_embed(kernels::pairwise_distances(data.points), k, d_out);
}

void write_embedding_csv(const std::string& path, const Matrix& coords) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (Index c = 0; c < coords.cols(); ++c) {
    out << (c ? "," : "") << 'y' << c;
  }
  out << '\n' << std::setprecision(17);
  for (Index r = 0; r < coords.rows(); ++r) {
    for (Index c = 0; c < coords.cols(); ++c) {
      out << (c ? "," : "") << coords(r, c);
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace riemdr
