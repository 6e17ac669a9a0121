#pragma once

#include <string>

#include "riemdr/dataset.h"

namespace riemdr {

/// Reads a header + numeric CSV. The named column holds labels, which are
/// factorized to 0..C-1 in order of first appearance; the remaining columns
/// become Euclidean points. Throws IoError, MissingLabelColumn, ParseError
/// (1-based file line and column).
LabeledDataset load_csv(const std::string& path,
                        const std::string& label_column = "label");

/// Reads a CSV written by save_csv and reinterprets the feature columns as
/// vectorized points of `spec`; every point is validated.
LabeledDataset load_dataset(const std::string& path, const ManifoldSpec& spec,
                            const std::string& label_column = "label");

/// Writes "f0,...,f{d-1},label" rows with 17 significant digits.
void save_csv(const std::string& path, const LabeledDataset& data,
              const std::string& label_column = "label");

/// "data/s.csv" -> "data/s.spec.json".
std::string sidecar_path(const std::string& csv_path);

void write_spec_json(const std::string& path, const ManifoldSpec& spec);
ManifoldSpec read_spec_json(const std::string& path);

}  // namespace riemdr
