#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "riemdr/dataset.h"
#include "riemdr/frechet.h"

namespace riemdr {

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Per-class shuffle, round(train_frac * n_c) to train (kept within
/// [1, n_c - 1]); indices returned sorted. Throws ClassTooSmall when a class
/// has fewer than 2 samples and InvalidArgument unless 0 < train_frac < 1.
SplitIndices stratified_split_indices(const LabeledDataset& data,
                                      double train_frac, std::uint64_t seed);
std::pair<LabeledDataset, LabeledDataset> stratified_split(
    const LabeledDataset& data, double train_frac, std::uint64_t seed);

/// Stratified subsample down to at most max_samples points.
LabeledDataset stratified_subsample(const LabeledDataset& data,
                                    std::size_t max_samples,
                                    std::uint64_t seed);

/// Majority vote over the k nearest training rows (Euclidean). Ties go to the
/// label with the smallest summed distance, then the smallest label.
std::vector<int> knn_classify(const Matrix& train_coords,
                              std::span<const int> train_labels,
                              const Matrix& test_coords, int k);

/// Percentage of equal entries. Throws LengthMismatch.
double accuracy(std::span<const int> pred, std::span<const int> truth);

enum class Method {
  PCA,
  LDA,
  Isomap,
  RPGA,
  RRPCA,
  RONPP,
  RLE,
  RLDA,
  RIsomap,
  RLENystrom,
  RSVM,
};

std::string method_name(Method m);
/// Accepts display names and lowercase slugs ("pca", "rpga", "r-pga", ...).
Method parse_method(const std::string& s);
/// The nine reducers of the default grid.
std::vector<Method> default_methods();
bool is_transductive(Method m);

struct BenchConfig {
  /// Target dimension; <= 0 selects min(3, d - 1).
  int n_components = 0;
  int k_knn_classifier = 5;
  /// Neighborhood size; <= 0 selects min(10, max(3, floor(n / 10))).
  int k_neighbors = 0;
  double train_frac = 0.7;
  std::uint64_t seed = 42;
  FrechetOptions frechet{};
  int admm_iters = 50;
  std::size_t max_samples = 2000;
  /// Increase k until the neighborhood graph is connected.
  bool grow_k = true;

  static BenchConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

int components_for(const BenchConfig& cfg, int d);
int lda_components_for(const BenchConfig& cfg, int d, int classes);
int neighbors_for(const BenchConfig& cfg, std::size_t n);

struct BenchRecord {
  std::string dataset;
  std::string method;
  /// NaN when the cell failed.
  double accuracy;
  double wall_ms;
  std::size_t n;
  int d;
  int classes;
  int n_components;
  /// Neighborhood size actually used (0 for methods without a graph).
  int k_neighbors;
  std::string error;
};

struct BenchmarkReport {
  std::vector<BenchRecord> rows;

  const BenchRecord* find(const std::string& dataset,
                          const std::string& method) const;
  /// "dataset,method,accuracy,wall_ms,n,d,C,k" with k = n_components.
  std::string to_csv() const;
  /// {"config": ..., "datasets": {name: {n, d, C, methods: {method: {...}}}}}
  nlohmann::json to_json() const;
  /// Methods as rows, datasets as columns.
  std::string grid() const;

  nlohmann::json config;
};

/// Runs one (dataset, method) cell on a prepared split. Throws on failure.
BenchRecord run_cell(const LabeledDataset& train, const LabeledDataset& test,
                     Method method, const BenchConfig& cfg);

/// Subsample, split and evaluate every (dataset, method) cell. Failing cells
/// get NaN accuracy and an error string. Cells run concurrently; rows are
/// assembled in grid order.
BenchmarkReport run_benchmark(std::span<const LabeledDataset> datasets,
                              std::span<const Method> methods,
                              const BenchConfig& cfg);

}  // namespace riemdr
