#include "riemdr/serialize.h"

#include "riemdr/errors.h"

namespace riemdr {

using nlohmann::json;

json to_json(const ManifoldSpec& spec) {
  return {{"manifold", spec.name()}, {"n", spec.n()}, {"p", spec.p()}};
}

ManifoldSpec spec_from_json(const json& j) {
  try {
    const std::string name = j.at("manifold").get<std::string>();
    const int n = j.at("n").get<int>();
    const int p = j.value("p", 1);
    if (name == "euclidean") return ManifoldSpec::euclidean(n);
    if (name == "sphere") return ManifoldSpec::sphere(n);
    if (name == "spd") return ManifoldSpec::spd(n);
    if (name == "grassmann") return ManifoldSpec::grassmann(p, n);
    if (name == "stiefel") return ManifoldSpec::stiefel(p, n);
    throw UnknownKind("unknown manifold '" + name + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("spec JSON: ") + e.what(), 0, 0);
  }
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  const Index rows = static_cast<Index>(j.size());
  const Index cols = rows ? static_cast<Index>(j.at(0).size()) : 0;
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (static_cast<Index>(j.at(i).size()) != cols) {
      throw ShapeMismatch("matrix JSON: ragged rows");
    }
    for (Index c = 0; c < cols; ++c) m(i, c) = j.at(i).at(c).get<double>();
  }
  return m;
}

namespace {

json vector_json(const Vector& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

json header(const std::string& method, const Point& base) {
  return {{"method", method},
          {"spec", to_json(base.spec())},
          {"base", to_json(base.data())}};
}

}  // namespace

json to_json(const PgaModel& m, const std::string& method) {
  json j = header(method, m.base);
  j["basis"] = to_json(m.basis);
  j["eigenvalues"] = vector_json(m.eigenvalues);
  return j;
}

json to_json(const RldaModel& m) {
  json j = header("rlda", m.base);
  j["basis"] = to_json(m.projection);
  j["eigenvalues"] = vector_json(m.eigenvalues);
  j["class_means_tangent"] = to_json(m.class_means_tangent);
  return j;
}

json to_json(const OnppModel& m) {
  json j = header("ronpp", m.base);
  j["basis"] = to_json(m.projection);
  j["objective_trace"] = m.objective_trace;
  j["converged"] = m.converged;
  return j;
}

json to_json(const RsvmModel& m) {
  json j = header("rsvm", m.base);
  j["mode"] = m.mode == SvmMode::TangentLinear ? "tangent_linear"
                                               : "geodesic_kernel";
  j["b"] = m.b;
  j["c_reg"] = m.c_reg;
  if (m.mode == SvmMode::TangentLinear) {
    j["w"] = vector_json(m.w);
  } else {
    j["sigma"] = m.sigma;
    j["min_gram_eigenvalue"] = m.min_gram_eigenvalue;
  }
  j["alphas"] = vector_json(m.alphas);
  j["support_labels"] = m.support_labels;
  json sp = json::array();
  for (const Point& p : m.support_points) sp.push_back(to_json(p.data()));
  j["support_points"] = std::move(sp);
  return j;
}

}  // namespace riemdr
