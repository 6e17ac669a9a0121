// riemdr: dataset generation, reduction, Frechet means, geodesic distances
// and the benchmark grid.
//
// Exit codes: 0 ok, 1 other error, 2 usage / unknown kind, 3 I/O,
// 4 disconnected neighborhood graph, 5 solver did not converge.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "riemdr/bench.h"
#include "riemdr/errors.h"
#include "riemdr/frechet.h"
#include "riemdr/generators.h"
#include "riemdr/graph.h"
#include "riemdr/io.h"
#include "riemdr/kernels.h"
#include "riemdr/log.h"
#include "riemdr/onpp.h"
#include "riemdr/pga.h"
#include "riemdr/rlda.h"
#include "riemdr/rrpca.h"
#include "riemdr/rsvm.h"
#include "riemdr/serialize.h"

namespace fs = std::filesystem;
using namespace riemdr;

namespace {

enum Exit { kOk = 0, kOther = 1, kUsage = 2, kIo = 3, kDisconnected = 4, kNoConvergence = 5 };

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path);
}

/// "sphere:3", "grassmann:2,5", or a path to a spec JSON file.
ManifoldSpec parse_spec(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) return read_spec_json(s);
  const std::string name = s.substr(0, colon);
  std::vector<int> dims;
  std::stringstream ss(s.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) dims.push_back(std::stoi(item));
  nlohmann::json j{{"manifold", name}};
  if (dims.size() == 1) {
    j["n"] = dims[0];
  } else if (dims.size() == 2) {
    j["p"] = dims[0];
    j["n"] = dims[1];
  } else {
    throw InvalidArgument("spec '" + s + "': expected name:n or name:p,n");
  }
  return spec_from_json(j);
}

/// Spec from --spec, else the sidecar, else Euclidean over the columns.
LabeledDataset read_input(const std::string& csv, const std::string& spec_arg,
                          const std::string& label_column) {
  if (!spec_arg.empty()) {
    return load_dataset(csv, parse_spec(spec_arg), label_column);
  }
  const std::string sidecar = sidecar_path(csv);
  if (fs::exists(sidecar)) {
    return load_dataset(csv, read_spec_json(sidecar), label_column);
  }
  return load_csv(csv, label_column);
}

Point parse_point(const ManifoldSpec& spec, const std::string& s) {
  std::vector<double> values;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
  if (static_cast<int>(values.size()) != spec.vec_dim()) {
    throw ShapeMismatch("point has " + std::to_string(values.size()) +
                        " values, " + spec.to_string() + " needs " +
                        std::to_string(spec.vec_dim()));
  }
  const Vector v = Eigen::Map<const Vector>(values.data(), spec.vec_dim());
  return Point(spec, devectorize(spec, v));
}

void print_spectrum(const std::string& label, const Vector& v) {
  std::cout << label << ":";
  for (Index i = 0; i < v.size(); ++i) std::cout << ' ' << v(i);
  std::cout << '\n';
}

struct GenerateArgs {
  std::string kind;
  std::uint64_t seed = 42;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  const LabeledDataset d = generate(a.kind, a.seed);
  save_csv(a.out, d);
  write_spec_json(sidecar_path(a.out), d.spec);
  std::cout << d.name << ": n=" << d.size() << " d=" << d.spec.vec_dim()
            << " C=" << d.num_classes() << " spec=" << d.spec.to_string()
            << '\n';
  return kOk;
}

struct ReduceArgs {
  std::string method;
  std::string in;
  std::string spec;
  std::string out;
  std::string model;
  std::string label_column = "label";
  int k = 0;
  int components = 0;
  bool grow_k = false;
  double lambda = 0.0;
  int admm_iters = 50;
};

int cmd_reduce(const ReduceArgs& a) {
  const LabeledDataset data = read_input(a.in, a.spec, a.label_column);
  data.validate();
  const int d = data.spec.vec_dim();
  BenchConfig cfg;
  cfg.n_components = a.components;
  cfg.k_neighbors = a.k;
  const int nc = components_for(cfg, d);
  int k = neighbors_for(cfg, data.size());
  const std::string model_path =
      a.model.empty() ? fs::path(a.out).replace_extension(".model.json").string()
                      : a.model;

  const std::string m = a.method;
  Matrix coords;
  nlohmann::json model;
  if (m == "pga") {
    const PgaModel pm = pga_fit(data, nc);
    coords = pga_transform(pm, data.points);
    model = to_json(pm);
    print_spectrum("eigenvalues", pm.eigenvalues);
  } else if (m == "rrpca") {
    const RrpcaResult r = rrpca_fit(data, a.lambda, a.admm_iters);
    const PgaModel pm = rrpca_projection(r, nc);
    coords = pga_transform(pm, data.points);
    model = to_json(pm, "rrpca");
    model["residual"] = r.residual;
    print_spectrum("low-rank eigenvalues", pm.eigenvalues);
    std::cout << "residual: " << r.residual << '\n';
  } else if (m == "ronpp") {
    const OnppModel om = onpp_fit(data, nc, k);
    coords = onpp_transform(om, data.points);
    model = to_json(om);
    std::cout << "objective: " << om.objective_trace.front() << " -> "
              << om.objective_trace.back() << '\n';
  } else if (m == "rlda") {
    const int classes = data.num_classes();
    int n_lda = nc;
    if (n_lda > classes - 1) {
      warn("rlda: --components " + std::to_string(nc) + " exceeds C - 1 = " +
           std::to_string(classes - 1) + "; clamped");
      n_lda = classes - 1;
    }
    const RldaModel rm = rlda_fit(data, n_lda);
    coords = rlda_transform(rm, data.points);
    model = to_json(rm);
    print_spectrum("eigenvalues", rm.eigenvalues);
  } else if (m == "rle" || m == "risomap") {
    const Matrix dist = kernels::pairwise_distances(data.points);
    NeighborGraph g = knn_graph(dist, k);
    while (component_sizes(g.edges).size() > 1 && a.grow_k &&
           k < static_cast<int>(data.size()) - 1) {
      g = knn_graph(dist, ++k);
    }
    require_connected(g.edges);
    EmbeddingResult e;
    if (m == "rle") {
      const NeighborGraph h = heat_weights(g);
      e = laplacian_embed(h, nc);
      model["t"] = h.t;
    } else {
      e = classical_mds(kernels::shortest_paths(g.edges), nc);
    }
    coords = e.coords;
    model["method"] = m;
    model["spec"] = to_json(data.spec);
    model["k"] = k;
    model["spectrum"] = std::vector<double>(e.spectrum.data(),
                                            e.spectrum.data() + e.spectrum.size());
    print_spectrum("spectrum", e.spectrum);
    std::cout << "k: " << k << '\n';
  } else if (m == "rsvm") {
    const RsvmModel sm = rsvm_fit(data);
    coords.resize(static_cast<Index>(data.size()), 1);
    for (std::size_t i = 0; i < data.size(); ++i) {
      coords(static_cast<Index>(i), 0) = rsvm_decision(sm, data.points[i]);
    }
    model = to_json(sm);
    std::cout << "support vectors: " << sm.support_points.size()
              << " b: " << sm.b << '\n';
  } else {
    throw UnknownKind("unknown method '" + m + "'");
  }
  write_embedding_csv(a.out, coords);
  write_text(model_path, model.dump(2) + "\n");
  return kOk;
}

struct MeanArgs {
  std::string in;
  std::string spec;
  std::string label_column = "label";
  double tol = 1e-6;
  int max_iter = 100;
};

int cmd_mean(const MeanArgs& a) {
  const LabeledDataset data = read_input(a.in, a.spec, a.label_column);
  const Point mean = frechet_mean(data.points, {a.tol, a.max_iter});
  validate_point(mean.spec(), mean.data(), 1e-8);
  const Vector v = vectorize(mean.spec(), mean.data());
  std::cout << std::setprecision(17);
  for (Index i = 0; i < v.size(); ++i) std::cout << (i ? "," : "") << v(i);
  std::cout << '\n';
  return kOk;
}

struct GeodesicArgs {
  std::string spec;
  std::string x;
  std::string y;
};

int cmd_geodesic(const GeodesicArgs& a) {
  const ManifoldSpec spec = parse_spec(a.spec);
  const double d = geodesic_dist(parse_point(spec, a.x), parse_point(spec, a.y));
  std::cout << std::setprecision(12) << d << '\n';
  return kOk;
}

struct BenchmarkArgs {
  std::string config;
  std::string out = "benchmark.csv";
  std::string include_real;
  std::string label_column = "label";
  bool rsvm = false;
  bool nystrom = false;
};

int cmd_benchmark(const BenchmarkArgs& a) {
  nlohmann::json j = nlohmann::json::object();
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw IoError("cannot open " + a.config);
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(a.config + ": " + e.what(), 0, 0);
    }
  }
  const BenchConfig cfg = BenchConfig::from_json(j);

  std::vector<LabeledDataset> datasets;
  if (j.contains("datasets")) {
    for (const auto& s : j["datasets"]) {
      datasets.push_back(generate(s.get<std::string>(), cfg.seed));
    }
  } else {
    for (DatasetKind k : default_grid_kinds()) datasets.push_back(generate(k, cfg.seed));
  }
  if (!a.include_real.empty()) {
    const std::pair<const char*, const char*> real[] = {
        {"mnist.csv", "MNIST"}, {"wine.csv", "Wine"}, {"cancer.csv", "Cancer"}};
    std::vector<LabeledDataset> front;
    for (const auto& [file, name] : real) {
      const fs::path p = fs::path(a.include_real) / file;
      if (!fs::exists(p)) continue;
      LabeledDataset d = load_csv(p.string(), a.label_column);
      d.name = name;
      front.push_back(std::move(d));
    }
    front.push_back(generate(DatasetKind::SyntheticHD, cfg.seed));
    datasets.insert(datasets.begin(), front.begin(), front.end());
  }

  std::vector<Method> methods = default_methods();
  if (a.nystrom) methods.push_back(Method::RLENystrom);
  if (a.rsvm) methods.push_back(Method::RSVM);

  // Per-cell diagnostics would flood stderr; keep a count and the first one.
  std::size_t warnings = 0;
  std::string first_warning;
  std::mutex warn_mutex;
  const WarningSink previous = set_warning_sink([&](const std::string& msg) {
    std::lock_guard lock(warn_mutex);
    if (warnings++ == 0) first_warning = msg;
  });
  const BenchmarkReport report = run_benchmark(datasets, methods, cfg);
  set_warning_sink(previous);
  if (warnings > 0) {
    std::cerr << "warning: " << first_warning << " (" << warnings
              << " warnings in total)\n";
  }
  write_text(a.out, report.to_csv());
  write_text(fs::path(a.out).replace_extension(".json").string(),
             report.to_json().dump(2) + "\n");
  std::cout << report.grid();

  bool any_ok = false;
  for (const BenchRecord& r : report.rows) {
    if (!std::isnan(r.accuracy)) {
      any_ok = true;
    } else if (!(a.rsvm && r.method == "RSVM")) {
      std::cerr << r.dataset << " / " << r.method << ": " << r.error << '\n';
    }
  }
  return any_ok ? kOk : kOther;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimensionality reduction for manifold-valued data"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a benchmark dataset");
  g->add_option("--kind", gen.kind, "Dataset kind (sphere_hard, great_circle, ...)")->required();
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--out", gen.out, "Output CSV path")->required();

  ReduceArgs red;
  auto* r = app.add_subcommand("reduce", "Fit one reducer and write the embedding");
  r->add_option("--method", red.method, "pga, rrpca, ronpp, rle, rlda, risomap, rsvm")->required();
  r->add_option("--in", red.in, "Input CSV")->required();
  r->add_option("--spec", red.spec, "Spec JSON path or name:dims (default: sidecar)");
  r->add_option("--k", red.k, "Neighborhood size (default: min(10, max(3, n / 10)))");
  r->add_option("--components", red.components, "Target dimension");
  r->add_option("--out", red.out, "Embedding CSV")->required();
  r->add_option("--model", red.model, "Model JSON (default: <out>.model.json)");
  r->add_option("--label-column", red.label_column, "Label column name");
  r->add_option("--lambda", red.lambda, "R-RPCA sparsity weight (default 1/sqrt(max(d,N)))");
  r->add_option("--admm-iters", red.admm_iters, "R-RPCA iterations");
  r->add_flag("--grow-k", red.grow_k, "Increase k until the graph is connected");

  MeanArgs mean;
  auto* m = app.add_subcommand("mean", "Frechet mean of a dataset");
  m->add_option("--in", mean.in, "Input CSV")->required();
  m->add_option("--spec", mean.spec, "Spec JSON path or name:dims");
  m->add_option("--label-column", mean.label_column, "Label column name");
  m->add_option("--tol", mean.tol, "Tangent-norm tolerance");
  m->add_option("--max-iter", mean.max_iter, "Iteration cap");

  GeodesicArgs geo;
  auto* gd = app.add_subcommand("geodesic", "Geodesic distance between two points");
  gd->add_option("--spec", geo.spec, "Spec JSON path or name:dims")->required();
  gd->add_option("--x", geo.x, "Comma-separated point (row-major)")->required();
  gd->add_option("--y", geo.y, "Comma-separated point (row-major)")->required();

  BenchmarkArgs bench;
  auto* b = app.add_subcommand("benchmark", "Run the benchmark grid");
  b->add_option("--config", bench.config, "Flat JSON overrides");
  b->add_option("--out", bench.out, "Report CSV (JSON written alongside)");
  b->add_option("--include-real", bench.include_real,
                "Directory with mnist.csv / wine.csv / cancer.csv");
  b->add_option("--label-column", bench.label_column, "Label column of real CSVs");
  b->add_flag("--rsvm", bench.rsvm, "Add the RSVM classifier (binary datasets)");
  b->add_flag("--nystrom", bench.nystrom, "Add inductive R-LE via Nystrom extension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*r) return cmd_reduce(red);
    if (*m) return cmd_mean(mean);
    if (*gd) return cmd_geodesic(geo);
    if (*b) return cmd_benchmark(bench);
  } catch (const UnknownKind& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const DisconnectedGraph& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDisconnected;
  } catch (const NoConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOk;
}
