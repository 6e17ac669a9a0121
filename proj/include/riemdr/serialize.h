#pragma once

// JSON forms of specs, points and fitted models.
//
//   spec:   {"manifold": "sphere", "n": 100, "p": 1}
//   matrix: array of rows
//   model:  {"method", "spec", "base", ...method fields}

#include <json.hpp>

#include "riemdr/manifold.h"
#include "riemdr/onpp.h"
#include "riemdr/pga.h"
#include "riemdr/rlda.h"
#include "riemdr/rrpca.h"
#include "riemdr/rsvm.h"

namespace riemdr {

nlohmann::json to_json(const ManifoldSpec& spec);
/// Throws UnknownKind for an unrecognized manifold name.
ManifoldSpec spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PgaModel& m, const std::string& method = "pga");
nlohmann::json to_json(const RldaModel& m);
nlohmann::json to_json(const OnppModel& m);
nlohmann::json to_json(const RsvmModel& m);

}  // namespace riemdr
