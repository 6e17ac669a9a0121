#pragma once

#include <cstdint>
#include <limits>

namespace riemdr {

/// Splittable SplitMix64 generator. A (seed, stream) pair fully determines
/// the sequence, so independent consumers (data generation, embedding
/// matrices, splits) draw from fixed, non-overlapping streams.
///
/// Normal deviates use the Box-Muller transform implemented here rather than
/// std::normal_distribution, whose output differs between standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }
  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n);

  /// Derives an independent generator for a sub-stream.
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Stream ids used by the data and benchmark modules.
namespace streams {
inline constexpr std::uint64_t kGenerate = 1;
inline constexpr std::uint64_t kEmbedding = 2;
inline constexpr std::uint64_t kSplit = 3;
inline constexpr std::uint64_t kSubsample = 4;
}  // namespace streams

}  // namespace riemdr
