#include "riemdr/io.h"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include "riemdr/errors.h"
#include "riemdr/serialize.h"

namespace riemdr {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  s = s.substr(b, e - b);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
  }
  return std::string(s);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && first != last;
}

}  // namespace

LabeledDataset load_csv(const std::string& path,
                        const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": missing header", 1, 1);
  const auto header = split_row(line);
  std::size_t label_col = header.size();
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == label_column) label_col = c;
  }
  if (label_col == header.size()) {
    throw MissingLabelColumn(path + ": no column named '" + label_column + "'");
  }
  const int dim = static_cast<int>(header.size()) - 1;
  if (dim < 1) throw ParseError(path + ": no feature columns", 1, 1);

  const ManifoldSpec spec = ManifoldSpec::euclidean(dim);
  LabeledDataset data{spec, {}, {}, path};
  std::unordered_map<std::string, int> codes;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != header.size()) {
      throw ParseError(path + ": expected " + std::to_string(header.size()) +
                           " cells, found " + std::to_string(cells.size()),
                       line_no, cells.size());
    }
    Vector x(dim);
    Index f = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == label_col) continue;
      double v;
      if (!parse_double(cells[c], v)) {
        throw ParseError(path + ": non-numeric cell '" + cells[c] + "'",
                         line_no, c + 1);
      }
      x(f++) = v;
    }
    const auto [it, inserted] =
        codes.emplace(cells[label_col], static_cast<int>(codes.size()));
    data.labels.push_back(it->second);
    data.points.push_back(Point::unchecked(spec, std::move(x)));
  }
  return data;
}

LabeledDataset load_dataset(const std::string& path, const ManifoldSpec& spec,
                            const std::string& label_column) {
  LabeledDataset flat = load_csv(path, label_column);
  if (flat.spec.vec_dim() != spec.vec_dim()) {
    throw ShapeMismatch(path + ": " + std::to_string(flat.spec.vec_dim()) +
                        " feature columns but " + spec.to_string() +
                        " needs " + std::to_string(spec.vec_dim()));
  }
  LabeledDataset out{spec, {}, std::move(flat.labels), flat.name};
  out.points.reserve(flat.points.size());
  for (std::size_t i = 0; i < flat.points.size(); ++i) {
    const Matrix m = devectorize(spec, flat.points[i].data().col(0));
    try {
      out.points.emplace_back(spec, m);
    } catch (const Error& e) {
      throw DomainError(path + ": row " + std::to_string(i + 1) + ": " +
                        e.what());
    }
  }
  return out;
}

void save_csv(const std::string& path, const LabeledDataset& data,
              const std::string& label_column) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  const int dim = data.spec.vec_dim();
  for (int f = 0; f < dim; ++f) out << 'f' << f << ',';
  out << label_column << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Vector v = vectorize(data.spec, data.points[i].data());
    for (Index f = 0; f < v.size(); ++f) out << v(f) << ',';
    out << data.labels[i] << '\n';
  }
  if (!out) throw IoError("failed writing " + path);
}

std::string sidecar_path(const std::string& csv_path) {
  const std::size_t slash = csv_path.find_last_of('/');
  const std::size_t dot = csv_path.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
    return csv_path.substr(0, dot) + ".spec.json";
  }
  return csv_path + ".spec.json";
}

void write_spec_json(const std::string& path, const ManifoldSpec& spec) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << to_json(spec).dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path);
}

ManifoldSpec read_spec_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what(), 0, 0);
  }
  return spec_from_json(j);
}

}  // namespace riemdr
