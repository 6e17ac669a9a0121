#include "riemdr/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "riemdr/errors.h"
#include "riemdr/graph.h"
#include "riemdr/kernels.h"
#include "riemdr/neighbors.h"
#include "riemdr/onpp.h"
#include "riemdr/pga.h"
#include "riemdr/rlda.h"
#include "riemdr/rng.h"
#include "riemdr/rrpca.h"
#include "riemdr/rsvm.h"

namespace riemdr {

SplitIndices stratified_split_indices(const LabeledDataset& data,
                                      double train_frac, std::uint64_t seed) {
  if (!(train_frac > 0.0 && train_frac < 1.0)) {
    throw InvalidArgument("stratified_split: train_frac must lie in (0, 1)");
  }
  const auto counts = data.class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] < 2) {
      throw ClassTooSmall("stratified_split: class " + std::to_string(c) +
                          " has " + std::to_string(counts[c]) + " sample(s)");
    }
  }
  Rng rng(seed, streams::kSplit);
  SplitIndices out;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (data.labels[i] == static_cast<int>(c)) members.push_back(i);
    }
    for (std::size_t i = members.size() - 1; i > 0; --i) {
      std::swap(members[i], members[rng.below(i + 1)]);
    }
    const double want = std::round(train_frac * static_cast<double>(members.size()));
    const std::size_t n_train = std::clamp<std::size_t>(
        static_cast<std::size_t>(want), 1, members.size() - 1);
    out.train.insert(out.train.end(), members.begin(),
                     members.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.test.insert(out.test.end(),
                    members.begin() + static_cast<std::ptrdiff_t>(n_train),
                    members.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::pair<LabeledDataset, LabeledDataset> stratified_split(
    const LabeledDataset& data, double train_frac, std::uint64_t seed) {
  const SplitIndices s = stratified_split_indices(data, train_frac, seed);
  return {data.subset(s.train), data.subset(s.test)};
}

LabeledDataset stratified_subsample(const LabeledDataset& data,
                                    std::size_t max_samples,
                                    std::uint64_t seed) {
  if (data.size() <= max_samples) return data;
  Rng rng(seed, streams::kSubsample);
  const auto counts = data.class_counts();
  std::vector<std::size_t> keep;
  const double frac =
      static_cast<double>(max_samples) / static_cast<double>(data.size());
  for (std::size_t c = 0; c < counts.size(); ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (data.labels[i] == static_cast<int>(c)) members.push_back(i);
    }
    for (std::size_t i = members.size() - 1; i > 0; --i) {
      std::swap(members[i], members[rng.below(i + 1)]);
    }
    const std::size_t n = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(frac * members.size())));
    keep.insert(keep.end(), members.begin(),
                members.begin() + static_cast<std::ptrdiff_t>(n));
  }
  std::sort(keep.begin(), keep.end());
  return data.subset(keep);
}

std::vector<int> knn_classify(const Matrix& train_coords,
                              std::span<const int> train_labels,
                              const Matrix& test_coords, int k) {
  if (static_cast<Index>(train_labels.size()) != train_coords.rows()) {
    throw LengthMismatch("knn_classify: labels and training rows differ");
  }
  if (k < 1 || k > train_coords.rows()) {
    throw InvalidArgument("knn_classify: need 1 <= k <= training size");
  }
  const Matrix d = kernels::euclidean_distances(test_coords, train_coords);
  std::vector<int> pred(static_cast<std::size_t>(test_coords.rows()));
  for (Index r = 0; r < d.rows(); ++r) {
    const Vector dr = d.row(r).transpose();
    std::map<int, std::pair<int, double>> votes;
    for (Index j : k_smallest(dr, k)) {
      auto& v = votes[train_labels[j]];
      v.first += 1;
      v.second += dr(j);
    }
    int best = -1;
    std::pair<int, double> best_v{-1, 0.0};
    for (const auto& [label, v] : votes) {
      if (v.first > best_v.first ||
          (v.first == best_v.first && v.second < best_v.second)) {
        best = label;
        best_v = v;
      }
    }
    pred[static_cast<std::size_t>(r)] = best;
  }
  return pred;
}

double accuracy(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size() || pred.empty()) {
    throw LengthMismatch("accuracy: need equal, nonzero lengths");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == truth[i];
  return 100.0 * static_cast<double>(hits) / static_cast<double>(pred.size());
}

namespace {

struct MethodInfo {
  Method method;
  const char* name;
  const char* slug;
};

constexpr MethodInfo kMethods[] = {
    {Method::PCA, "PCA", "pca"},
    {Method::LDA, "LDA", "lda"},
    {Method::Isomap, "Isomap", "isomap"},
    {Method::RPGA, "R-PGA", "rpga"},
    {Method::RRPCA, "R-RPCA", "rrpca"},
    {Method::RONPP, "R-ONPP", "ronpp"},
    {Method::RLE, "R-LE", "rle"},
    {Method::RLDA, "R-LDA", "rlda"},
    {Method::RIsomap, "R-Isomap", "risomap"},
    {Method::RLENystrom, "R-LE (Nystrom)", "rle_nystrom"},
    {Method::RSVM, "RSVM", "rsvm"},
};

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

LabeledDataset concat(const LabeledDataset& a, const LabeledDataset& b) {
  LabeledDataset out = a;
  out.points.insert(out.points.end(), b.points.begin(), b.points.end());
  out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
  return out;
}

/// Smallest k' >= k whose kNN graph is connected (or k itself when not
/// growing, which then throws DisconnectedGraph).
NeighborGraph connected_graph(const Matrix& dist, int k, bool grow, int& used) {
  const int n = static_cast<int>(dist.rows());
  k = std::min(k, n - 1);
  for (;;) {
    NeighborGraph g = knn_graph(dist, k);
    auto sizes = component_sizes(g.edges);
    if (sizes.size() == 1) {
      used = k;
      return g;
    }
    if (!grow || k >= n - 1) throw DisconnectedGraph(std::move(sizes));
    ++k;
  }
}

struct Embedded {
  Matrix train;
  Matrix test;
  int k_used = 0;
};

Embedded embed(const LabeledDataset& train, const LabeledDataset& test,
               Method method, const BenchConfig& cfg, int nc, int n_lda,
               int k) {
  Embedded e;
  switch (method) {
    case Method::PCA:
    case Method::RPGA: {
      const LabeledDataset tr =
          method == Method::PCA ? train.as_euclidean() : train;
      const LabeledDataset te = method == Method::PCA ? test.as_euclidean() : test;
      const PgaModel m = pga_fit(tr, nc, cfg.frechet);
      e.train = pga_transform(m, tr.points);
      e.test = pga_transform(m, te.points);
      return e;
    }
    case Method::LDA:
    case Method::RLDA: {
      const LabeledDataset tr =
          method == Method::LDA ? train.as_euclidean() : train;
      const LabeledDataset te = method == Method::LDA ? test.as_euclidean() : test;
      const RldaModel m = rlda_fit(tr, n_lda, cfg.frechet);
      e.train = rlda_transform(m, tr.points);
      e.test = rlda_transform(m, te.points);
      return e;
    }
    case Method::RRPCA: {
      const RrpcaResult r = rrpca_fit(train, 0.0, cfg.admm_iters, cfg.frechet);
      const PgaModel m = rrpca_projection(r, nc);
      e.train = pga_transform(m, train.points);
      e.test = pga_transform(m, test.points);
      return e;
    }
    case Method::RONPP: {
      OnppOptions opts;
      opts.frechet = cfg.frechet;
      e.k_used = std::min<int>(k, static_cast<int>(train.size()) - 1);
      const OnppModel m = onpp_fit(train, nc, e.k_used, opts);
      e.train = onpp_transform(m, train.points);
      e.test = onpp_transform(m, test.points);
      return e;
    }
    case Method::Isomap:
    case Method::RIsomap:
    case Method::RLE: {
      LabeledDataset all = concat(train, test);
      if (method == Method::Isomap) all = all.as_euclidean();
      const Matrix dist = kernels::pairwise_distances(all.points);
      const NeighborGraph g = connected_graph(dist, k, cfg.grow_k, e.k_used);
      Matrix coords;
      if (method == Method::RLE) {
        coords = laplacian_embed(heat_weights(g), nc).coords;
      } else {
        coords = classical_mds(kernels::shortest_paths(g.edges), nc).coords;
      }
      const Index ntr = static_cast<Index>(train.size());
      e.train = coords.topRows(ntr);
      e.test = coords.bottomRows(coords.rows() - ntr);
      return e;
    }
    case Method::RLENystrom: {
      const Matrix dist = kernels::pairwise_distances(train.points);
      const NeighborGraph g = connected_graph(dist, k, cfg.grow_k, e.k_used);
      const NeighborGraph h = heat_weights(g);
      e.train = laplacian_embed(h, nc).coords;
      e.test = nystrom_extend(train.points, e.train, test.points, e.k_used, h.t);
      return e;
    }
    case Method::RSVM:
      break;
  }
  throw InvalidArgument("embed: method has no embedding");
}

}  // namespace

std::string method_name(Method m) {
  for (const MethodInfo& i : kMethods) {
    if (i.method == m) return i.name;
  }
  throw UnknownKind("unknown method");
}

Method parse_method(const std::string& s) {
  const std::string l = lower(s);
  for (const MethodInfo& i : kMethods) {
    if (l == i.slug || l == lower(i.name)) return i.method;
    std::string no_dash = lower(i.name);
    no_dash.erase(std::remove(no_dash.begin(), no_dash.end(), '-'), no_dash.end());
    if (l == no_dash) return i.method;
  }
  throw UnknownKind("unknown method '" + s + "'");
}

std::vector<Method> default_methods() {
  return {Method::PCA,   Method::LDA,   Method::Isomap,
          Method::RPGA,  Method::RRPCA, Method::RONPP,
          Method::RLE,   Method::RLDA,  Method::RIsomap};
}

bool is_transductive(Method m) {
  return m == Method::RLE || m == Method::RIsomap || m == Method::Isomap;
}

BenchConfig BenchConfig::from_json(const nlohmann::json& j) {
  BenchConfig c;
  try {
    c.n_components = j.value("n_components", c.n_components);
    c.k_knn_classifier = j.value("k_knn", c.k_knn_classifier);
    c.k_neighbors = j.value("k_neighbors", c.k_neighbors);
    c.train_frac = j.value("train_frac", c.train_frac);
    c.seed = j.value("seed", c.seed);
    c.frechet.tol = j.value("frechet_tol", c.frechet.tol);
    c.frechet.max_iter = j.value("frechet_max_iter", c.frechet.max_iter);
    c.admm_iters = j.value("admm_iters", c.admm_iters);
    c.max_samples = j.value("max_samples", c.max_samples);
    c.grow_k = j.value("grow_k", c.grow_k);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("benchmark config: ") + e.what(), 0, 0);
  }
  return c;
}

nlohmann::json BenchConfig::to_json() const {
  return {{"n_components", n_components},
          {"k_knn", k_knn_classifier},
          {"k_neighbors", k_neighbors},
          {"train_frac", train_frac},
          {"seed", seed},
          {"frechet_tol", frechet.tol},
          {"frechet_max_iter", frechet.max_iter},
          {"admm_iters", admm_iters},
          {"max_samples", max_samples},
          {"grow_k", grow_k}};
}

int components_for(const BenchConfig& cfg, int d) {
  return cfg.n_components > 0 ? cfg.n_components : std::min(3, d - 1);
}

int lda_components_for(const BenchConfig& cfg, int d, int classes) {
  return std::min(components_for(cfg, d), classes - 1);
}

int neighbors_for(const BenchConfig& cfg, std::size_t n) {
  if (cfg.k_neighbors > 0) return cfg.k_neighbors;
  return std::min(10, std::max(3, static_cast<int>(n / 10)));
}

BenchRecord run_cell(const LabeledDataset& train, const LabeledDataset& test,
                     Method method, const BenchConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const int d = train.spec.vec_dim();
  const int classes = std::max(train.num_classes(), test.num_classes());
  const std::size_t n = train.size() + test.size();
  const int nc = components_for(cfg, d);
  const int n_lda = lda_components_for(cfg, d, classes);
  const int k = neighbors_for(cfg, n);

  BenchRecord rec{train.name, method_name(method), 0.0, 0.0, n, d, classes,
                  method == Method::LDA || method == Method::RLDA ? n_lda : nc,
                  0, ""};
  if (method == Method::RSVM) {
    if (classes != 2) throw InvalidArgument("RSVM needs a binary dataset");
    const RsvmModel m = rsvm_fit(train, RsvmOptions{.frechet = cfg.frechet});
    std::vector<int> pred;
    for (const Point& p : test.points) pred.push_back(rsvm_predict(m, p) > 0 ? 1 : 0);
    rec.accuracy = accuracy(pred, test.labels);
    rec.n_components = 0;
  } else {
    const Embedded e = embed(train, test, method, cfg, nc, n_lda, k);
    if (!e.train.allFinite() || !e.test.allFinite()) {
      throw NonFiniteObjective("embedding contains non-finite coordinates");
    }
    const int kk = std::min<int>(cfg.k_knn_classifier,
                                 static_cast<int>(e.train.rows()));
    const auto pred = knn_classify(e.train, train.labels, e.test, kk);
    rec.accuracy = accuracy(pred, test.labels);
    rec.k_neighbors = e.k_used;
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rec;
}

BenchmarkReport run_benchmark(std::span<const LabeledDataset> datasets,
                              std::span<const Method> methods,
                              const BenchConfig& cfg) {
  struct Prepared {
    LabeledDataset train;
    LabeledDataset test;
    std::string error;
  };
  std::vector<Prepared> prepared;
  prepared.reserve(datasets.size());
  for (const LabeledDataset& ds : datasets) {
    Prepared p{LabeledDataset{ds.spec, {}, {}, ds.name},
               LabeledDataset{ds.spec, {}, {}, ds.name}, ""};
    try {
      ds.validate();
      const LabeledDataset sub = stratified_subsample(ds, cfg.max_samples, cfg.seed);
      auto [tr, te] = stratified_split(sub, cfg.train_frac, cfg.seed);
      p.train = std::move(tr);
      p.test = std::move(te);
    } catch (const std::exception& e) {
      p.error = e.what();
    }
    prepared.push_back(std::move(p));
  }

  const long long n_methods = static_cast<long long>(methods.size());
  const long long cells = static_cast<long long>(datasets.size()) * n_methods;
  BenchmarkReport report;
  report.config = cfg.to_json();
  report.rows.resize(static_cast<std::size_t>(cells));
#pragma omp parallel for schedule(dynamic, 1)
  for (long long c = 0; c < cells; ++c) {
    const Prepared& p = prepared[static_cast<std::size_t>(c / n_methods)];
    const Method m = methods[static_cast<std::size_t>(c % n_methods)];
    BenchRecord& rec = report.rows[static_cast<std::size_t>(c)];
    const auto start = std::chrono::steady_clock::now();
    try {
      if (!p.error.empty()) throw InvalidArgument(p.error);
      rec = run_cell(p.train, p.test, m, cfg);
    } catch (const std::exception& e) {
      rec = BenchRecord{p.train.name,
                        method_name(m),
                        std::numeric_limits<double>::quiet_NaN(),
                        0.0,
                        p.train.size() + p.test.size(),
                        p.train.spec.vec_dim(),
                        std::max(p.train.num_classes(), p.test.num_classes()),
                        0,
                        0,
                        e.what()};
      rec.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    }
  }
  return report;
}

const BenchRecord* BenchmarkReport::find(const std::string& dataset,
                                         const std::string& method) const {
  for (const BenchRecord& r : rows) {
    if (r.dataset == dataset && r.method == method) return &r;
  }
  return nullptr;
}

std::string BenchmarkReport::to_csv() const {
  std::ostringstream os;
  os << "dataset,method,accuracy,wall_ms,n,d,C,k\n";
  for (const BenchRecord& r : rows) {
    os << r.dataset << ',' << r.method << ',';
    if (std::isnan(r.accuracy)) {
      os << "nan";
    } else {
      os << std::setprecision(10) << r.accuracy;
    }
    os << ',' << std::fixed << std::setprecision(3) << r.wall_ms
       << std::defaultfloat << ',' << r.n << ',' << r.d << ',' << r.classes
       << ',' << r.n_components << '\n';
  }
  return os.str();
}

nlohmann::json BenchmarkReport::to_json() const {
  nlohmann::json datasets = nlohmann::json::object();
  for (const BenchRecord& r : rows) {
    auto& ds = datasets[r.dataset];
    ds["n"] = r.n;
    ds["d"] = r.d;
    ds["C"] = r.classes;
    nlohmann::json cell{{"accuracy", std::isnan(r.accuracy)
                                         ? nlohmann::json(nullptr)
                                         : nlohmann::json(r.accuracy)},
                        {"wall_ms", r.wall_ms},
                        {"n_components", r.n_components},
                        {"k_neighbors", r.k_neighbors}};
    if (!r.error.empty()) cell["error"] = r.error;
    ds["methods"][r.method] = std::move(cell);
  }
  return {{"config", config}, {"datasets", std::move(datasets)}};
}

std::string BenchmarkReport::grid() const {
  std::vector<std::string> ds_order;
  std::vector<std::string> m_order;
  for (const BenchRecord& r : rows) {
    if (std::find(ds_order.begin(), ds_order.end(), r.dataset) == ds_order.end())
      ds_order.push_back(r.dataset);
    if (std::find(m_order.begin(), m_order.end(), r.method) == m_order.end())
      m_order.push_back(r.method);
  }
  std::ostringstream os;
  constexpr int kFirst = 16;
  constexpr int kCol = 14;
  os << std::left << std::setw(kFirst) << "method";
  for (const auto& d : ds_order) os << std::right << std::setw(kCol) << d;
  os << '\n';
  for (const auto& m : m_order) {
    os << std::left << std::setw(kFirst) << m;
    for (const auto& d : ds_order) {
      const BenchRecord* r = find(d, m);
      os << std::right << std::setw(kCol);
      if (!r || std::isnan(r->accuracy)) {
        os << "nan";
      } else {
        os << std::fixed << std::setprecision(1) << r->accuracy
           << std::defaultfloat;
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace riemdr
