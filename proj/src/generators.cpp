#include "riemdr/generators.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "riemdr/errors.h"
#include "riemdr/rng.h"

namespace riemdr {
namespace {

using std::numbers::pi;

constexpr int kAmbient = 100;

struct KindInfo {
  DatasetKind kind;
  const char* slug;
  const char* display;
};

constexpr std::array<KindInfo, 9> kKinds{{
    {DatasetKind::SyntheticHD, "synthetic_hd", "Synthetic HD"},
    {DatasetKind::SwissRoll, "swiss_roll", "Swiss Roll"},
    {DatasetKind::SCurve, "s_curve", "S-Curve"},
    {DatasetKind::Moons, "moons", "3D Moons"},
    {DatasetKind::Circles, "circles", "3D Circles"},
    {DatasetKind::SphereHard, "sphere_hard", "Sphere Hard"},
    {DatasetKind::GreatCircle, "great_circle", "Great Circle"},
    {DatasetKind::Bands, "bands", "Sphere Bands"},
    {DatasetKind::Rings, "rings", "Rings"},
}};

const KindInfo& info(DatasetKind kind) {
  for (const KindInfo& k : kKinds) {
    if (k.kind == kind) return k;
  }
  throw UnknownKind("unknown dataset kind");
}

/// Raw 3D samples (columns) with labels, before the ambient embedding.
struct Raw {
  Matrix x;
  std::vector<int> labels;
};


Matrix orthonormal_embedding(std::uint64_t seed, int rows, int cols) {
  Rng rng(seed, streams::kEmbedding);
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Index j = 0; j < cols; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

Eigen::Vector3d sphere_exp3(const Eigen::Vector3d& c, const Eigen::Vector3d& v) {
  const double t = v.norm();
  if (t == 0.0) return c;
  return (std::cos(t) * c + std::sin(t) * v / t).normalized();
}

/// Gaussian tangent noise at c with per-coordinate deviation sigma.
Eigen::Vector3d tangent_noise(const Eigen::Vector3d& c, double sigma, Rng& rng) {
  Eigen::Vector3d g(rng.normal(), rng.normal(), rng.normal());
  g -= c.dot(g) * c;
  return sigma * g;
}

Raw sphere_hard(Rng& rng) {
  constexpr int kClasses = 4;
  constexpr int kPer = 150;
  Raw raw{Matrix(3, kClasses * kPer), {}};
  const double golden = pi * (3.0 - std::sqrt(5.0));
  int col = 0;
  for (int c = 0; c < kClasses; ++c) {
    const double y = 1.0 - 2.0 * (c + 0.5) / kClasses;
    const double r = std::sqrt(1.0 - y * y);
    const Eigen::Vector3d center(r * std::cos(golden * c), y,
                                 r * std::sin(golden * c));
    for (int i = 0; i < kPer; ++i, ++col) {
      raw.x.col(col) = sphere_exp3(center, tangent_noise(center, 0.25, rng));
      raw.labels.push_back(c);
    }
  }
  return raw;
}

Raw great_circle(Rng& rng) {
  constexpr int kClasses = 4;
  constexpr int kPer = 150;
  Raw raw{Matrix(3, kClasses * kPer), {}};
  int col = 0;
  for (int c = 0; c < kClasses; ++c) {
    const double mid = (-67.5 + 45.0 * c) * pi / 180.0;
    const double half = 20.0 * pi / 180.0;
    for (int i = 0; i < kPer; ++i, ++col) {
      const double phi = rng.uniform(mid - half, mid + half);
      const Eigen::Vector3d p(std::cos(phi), std::sin(phi), 0.0);
      raw.x.col(col) = sphere_exp3(p, tangent_noise(p, 0.08, rng));
      raw.labels.push_back(c);
    }
  }
  return raw;
}

Raw bands(Rng& rng) {
  constexpr std::array<double, 3> kLevels{-0.7, 0.0, 0.7};
  constexpr int kPer = 200;
  Raw raw{Matrix(3, 3 * kPer), {}};
  int col = 0;
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < kPer; ++i, ++col) {
      const double z = std::clamp(kLevels[c] + rng.normal(0.0, 0.1), -0.99, 0.99);
      const double phi = rng.uniform(0.0, 2.0 * pi);
      const double r = std::sqrt(1.0 - z * z);
      raw.x.col(col) = Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z);
      raw.labels.push_back(c);
    }
  }
  return raw;
}

Raw rings(Rng& rng) {
  constexpr int kPer = 200;
  Raw raw{Matrix(3, 2 * kPer), {}};
  int col = 0;
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < kPer; ++i, ++col) {
      const double phi = rng.uniform(0.0, 2.0 * pi);
      const Eigen::Vector3d p =
          c == 0 ? Eigen::Vector3d(std::cos(phi), std::sin(phi), 0.0)
                 : Eigen::Vector3d(std::cos(phi), 0.0, std::sin(phi));
      raw.x.col(col) = sphere_exp3(p, tangent_noise(p, 0.1, rng));
      raw.labels.push_back(c);
    }
  }
  return raw;
}

/// Labels from equal-mass bins of a generative parameter.
std::vector<int> quantile_bins(const std::vector<double>& t, int bins) {
  std::vector<std::size_t> order(t.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });
  std::vector<int> labels(t.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    labels[order[r]] = static_cast<int>(r * bins / order.size());
  }
  return labels;
}

Raw swiss_roll(Rng& rng) {
  constexpr int kN = 1000;
  Raw raw{Matrix(3, kN), {}};
  std::vector<double> ts(kN);
  for (int i = 0; i < kN; ++i) {
    const double t = 1.5 * pi * (1.0 + 2.0 * rng.uniform());
    const double h = 21.0 * rng.uniform();
    ts[i] = t;
    raw.x.col(i) = Eigen::Vector3d(t * std::cos(t), h, t * std::sin(t));
    for (int r = 0; r < 3; ++r) raw.x(r, i) += rng.normal(0.0, 0.5);
  }
  raw.labels = quantile_bins(ts, 4);
  return raw;
}

Raw s_curve(Rng& rng) {
  constexpr int kN = 1000;
  Raw raw{Matrix(3, kN), {}};
  std::vector<double> ts(kN);
  for (int i = 0; i < kN; ++i) {
    const double t = 3.0 * pi * (rng.uniform() - 0.5);
    const double h = 2.0 * rng.uniform();
    ts[i] = t;
    const double sign = t < 0.0 ? -1.0 : 1.0;
    raw.x.col(i) = Eigen::Vector3d(std::sin(t), h, sign * (std::cos(t) - 1.0));
    for (int r = 0; r < 3; ++r) raw.x(r, i) += rng.normal(0.0, 0.1);
  }
  raw.labels = quantile_bins(ts, 2);
  return raw;
}

Raw moons(Rng& rng) {
  constexpr int kPer = 300;
  Raw raw{Matrix(3, 2 * kPer), {}};
  int col = 0;
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < kPer; ++i, ++col) {
      const double s = pi * i / (kPer - 1);
      Eigen::Vector3d p = c == 0
                              ? Eigen::Vector3d(std::cos(s), std::sin(s), 0.0)
                              : Eigen::Vector3d(1.0 - std::cos(s),
                                                0.5 - std::sin(s), 0.0);
      for (int r = 0; r < 3; ++r) p(r) += rng.normal(0.0, 0.1);
      raw.x.col(col) = p;
      raw.labels.push_back(c);
    }
  }
  return raw;
}

Raw circles(Rng& rng) {
  constexpr int kPer = 300;
  constexpr double kFactor = 0.5;
  Raw raw{Matrix(3, 2 * kPer), {}};
  int col = 0;
  for (int c = 0; c < 2; ++c) {
    const double radius = c == 0 ? 1.0 : kFactor;
    for (int i = 0; i < kPer; ++i, ++col) {
      const double s = 2.0 * pi * i / kPer;
      Eigen::Vector3d p(radius * std::cos(s), radius * std::sin(s), 0.0);
      for (int r = 0; r < 3; ++r) p(r) += rng.normal(0.0, 0.05);
      raw.x.col(col) = p;
      raw.labels.push_back(c);
    }
  }
  return raw;
}

LabeledDataset synthetic_hd(Rng& rng) {
  constexpr int kInformative = 10;
  constexpr int kRedundant = 10;
  constexpr int kNoise = 30;
  constexpr int kDim = kInformative + kRedundant + kNoise;
  constexpr int kClasses = 4;
  constexpr int kPer = 150;
  constexpr int kN = kClasses * kPer;

  // Distinct hypercube vertices as class centers.
  std::vector<std::uint64_t> vertices;
  while (static_cast<int>(vertices.size()) < kClasses) {
    const std::uint64_t v = rng.below(1u << kInformative);
    if (std::find(vertices.begin(), vertices.end(), v) == vertices.end()) {
      vertices.push_back(v);
    }
  }
  Matrix mix(kInformative, kRedundant);
  for (Index j = 0; j < mix.cols(); ++j)
    for (Index i = 0; i < mix.rows(); ++i) mix(i, j) = rng.uniform(-1.0, 1.0);

  Matrix x(kN, kDim);
  std::vector<int> labels;
  for (int c = 0; c < kClasses; ++c) {
    for (int i = 0; i < kPer; ++i) {
      const int row = c * kPer + i;
      for (int f = 0; f < kInformative; ++f) {
        const double center = (vertices[c] >> f) & 1u ? 1.0 : -1.0;
        x(row, f) = center + rng.normal();
      }
      x.block(row, kInformative, 1, kRedundant) =
          x.block(row, 0, 1, kInformative) * mix;
      for (int f = 0; f < kNoise; ++f) {
        x(row, kInformative + kRedundant + f) = rng.normal();
      }
      labels.push_back(c);
    }
  }
  for (Index f = 0; f < kDim; ++f) {
    const double mean = x.col(f).mean();
    x.col(f).array() -= mean;
    const double sd = std::sqrt(x.col(f).squaredNorm() / kN);
    if (sd > 0.0) x.col(f) /= sd;
  }

  LabeledDataset d{ManifoldSpec::euclidean(kDim), {}, std::move(labels),
                   dataset_display_name(DatasetKind::SyntheticHD)};
  d.points.reserve(kN);
  for (Index i = 0; i < kN; ++i) {
    d.points.push_back(Point::unchecked(d.spec, x.row(i).transpose()));
  }
  return d;
}

LabeledDataset embed(Raw raw, bool spherical, std::uint64_t seed,
                     DatasetKind kind) {
  const Matrix q = orthonormal_embedding(seed, kAmbient, 3);
  const ManifoldSpec spec = spherical ? ManifoldSpec::sphere(kAmbient)
                                      : ManifoldSpec::euclidean(kAmbient);
  LabeledDataset d{spec, {}, std::move(raw.labels), dataset_display_name(kind)};
  d.points.reserve(static_cast<std::size_t>(raw.x.cols()));
  for (Index i = 0; i < raw.x.cols(); ++i) {
    Vector v = q * raw.x.col(i);
    if (spherical) {
      v.normalize();
      d.points.emplace_back(spec, v);
    } else {
      d.points.push_back(Point::unchecked(spec, v));
    }
  }
  return d;
}

}  // namespace

DatasetKind parse_dataset_kind(std::string_view slug) {
  for (const KindInfo& k : kKinds) {
    if (slug == k.slug) return k.kind;
  }
  throw UnknownKind("unknown dataset kind '" + std::string(slug) + "'");
}

std::string dataset_slug(DatasetKind kind) { return info(kind).slug; }

std::string dataset_display_name(DatasetKind kind) { return info(kind).display; }

std::vector<DatasetKind> default_grid_kinds() {
  return {DatasetKind::SwissRoll,  DatasetKind::SCurve,
          DatasetKind::Moons,      DatasetKind::Circles,
          DatasetKind::SphereHard, DatasetKind::GreatCircle,
          DatasetKind::Bands,      DatasetKind::Rings};
}

LabeledDataset generate(DatasetKind kind, std::uint64_t seed) {
  Rng rng(seed, streams::kGenerate);
  switch (kind) {
    case DatasetKind::SyntheticHD:
      return synthetic_hd(rng);
    case DatasetKind::SwissRoll:
      return embed(swiss_roll(rng), false, seed, kind);
    case DatasetKind::SCurve:
      return embed(s_curve(rng), false, seed, kind);
    case DatasetKind::Moons:
      return embed(moons(rng), false, seed, kind);
    case DatasetKind::Circles:
      return embed(circles(rng), false, seed, kind);
    case DatasetKind::SphereHard:
      return embed(sphere_hard(rng), true, seed, kind);
    case DatasetKind::GreatCircle:
      return embed(great_circle(rng), true, seed, kind);
    case DatasetKind::Bands:
      return embed(bands(rng), true, seed, kind);
    case DatasetKind::Rings:
      return embed(rings(rng), true, seed, kind);
  }
  throw UnknownKind("unknown dataset kind");
}

LabeledDataset generate(std::string_view slug, std::uint64_t seed) {
  return generate(parse_dataset_kind(slug), seed);
}

}  // namespace riemdr
