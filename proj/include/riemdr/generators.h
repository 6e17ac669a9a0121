#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "riemdr/dataset.h"

namespace riemdr {

enum class DatasetKind {
  SyntheticHD,
  SwissRoll,
  SCurve,
  Moons,
  Circles,
  SphereHard,
  GreatCircle,
  Bands,
  Rings,
};

/// Slugs: synthetic_hd, swiss_roll, s_curve, moons, circles, sphere_hard,
/// great_circle, bands, rings. Throws UnknownKind.
DatasetKind parse_dataset_kind(std::string_view slug);
std::string dataset_slug(DatasetKind kind);
/// Name used in reports ("Sphere Hard", "Swiss Roll", ...).
std::string dataset_display_name(DatasetKind kind);

/// The manifold and spherical sets that make up the default grid.
std::vector<DatasetKind> default_grid_kinds();

/// Deterministic for a fixed seed. Three-dimensional constructions are
/// mapped into R^100 by a seeded orthonormal 100 x 3 matrix. Spherical sets
/// keep the Sphere(100) spec; the others are Euclidean.
LabeledDataset generate(DatasetKind kind, std::uint64_t seed);
LabeledDataset generate(std::string_view slug, std::uint64_t seed);

}  // namespace riemdr
