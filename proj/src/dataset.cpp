#include "cfl/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "cfl/rng.hpp"

namespace cfl {

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(classes, 0);
  for (const auto l : labels) ++counts[static_cast<std::size_t>(l)];
  return counts;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.features = features.select_rows(indices);
  out.labels.reserve(indices.size());
  for (const auto i : indices) out.labels.push_back(labels[i]);
  out.classes = classes;
  out.class_names = class_names;
  return out;
}

void Dataset::validate() const {
  if (features.rows() != labels.size()) {
    throw std::invalid_argument("Dataset: feature rows and labels differ in length");
  }
  for (const auto l : labels) {
    if (l < 0 || static_cast<std::size_t>(l) >= classes) {
      throw std::invalid_argument("Dataset: label out of range");
    }
  }
}

MinMaxScaler MinMaxScaler::fit(const Matrix& features) {
  MinMaxScaler s;
  const std::size_t d = features.cols();
  s.min_.assign(d, 0.0);
  s.range_.assign(d, 0.0);
  if (features.rows() == 0) return s;
  for (std::size_t c = 0; c < d; ++c) {
    double lo = features(0, c);
    double hi = lo;
    for (std::size_t r = 1; r < features.rows(); ++r) {
      lo = std::min(lo, features(r, c));
      hi = std::max(hi, features(r, c));
    }
    s.min_[c] = lo;
    s.range_[c] = hi - lo;
  }
  return s;
}

Matrix MinMaxScaler::apply(const Matrix& features) const {
  if (features.cols() != min_.size()) throw std::invalid_argument("MinMaxScaler: dimension mismatch");
  Matrix out(features.rows(), features.cols());
  for (std::size_t r = 0; r < features.rows(); ++r) {
    for (std::size_t c = 0; c < features.cols(); ++c) {
      out(r, c) = range_[c] > 0 ? (features(r, c) - min_[c]) / range_[c] : 0.0;
    }
  }
  return out;
}

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& cell, std::size_t line_no) {
  double v = 0.0;
  const auto* first = cell.data();
  const auto* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc() || ptr != last) {
    throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": non-numeric cell '" + cell + "'");
  }
  return v;
}

}  // namespace

Dataset parse_csv(const std::string& text, const CsvSpec& spec) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 0;
  std::vector<std::size_t> row_line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split_line(line);
    if (spec.has_header && header.empty()) {
      header = std::move(cells);
      continue;
    }
    rows.push_back(std::move(cells));
    row_line.push_back(line_no);
  }
  if (rows.empty()) throw std::invalid_argument("CSV: no data rows");

  const std::size_t width = rows.front().size();
  if (width < 2) throw std::invalid_argument("CSV: need at least one feature column and a label column");
  std::size_t label_col = width - 1;
  if (!spec.label_column.empty()) {
    const auto it = std::find(header.begin(), header.end(), spec.label_column);
    if (it != header.end()) {
      label_col = static_cast<std::size_t>(it - header.begin());
    } else {
      std::size_t idx = 0;
      const auto [ptr, ec] = std::from_chars(spec.label_column.data(),
                                             spec.label_column.data() + spec.label_column.size(), idx);
      if (ec != std::errc() || ptr != spec.label_column.data() + spec.label_column.size() || idx >= width) {
        throw std::invalid_argument("CSV: unknown label column '" + spec.label_column + "'");
      }
      label_col = idx;
    }
  }

  Matrix features;
  std::vector<std::string> raw_labels;
  std::vector<double> buf;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (cells.size() != width) {
      throw std::invalid_argument("CSV line " + std::to_string(row_line[r]) + ": expected " +
                                  std::to_string(width) + " cells");
    }
    buf.clear();
    for (std::size_t c = 0; c < width; ++c) {
      if (c == label_col) continue;
      buf.push_back(parse_number(cells[c], row_line[r]));
    }
    features.append_row(buf);
    raw_labels.push_back(cells[label_col]);
  }

  if (spec.positive_class) {
    const auto& pos = *spec.positive_class;
    if (std::find(raw_labels.begin(), raw_labels.end(), pos) == raw_labels.end()) {
      throw std::invalid_argument("CSV: positive class '" + pos + "' does not occur");
    }
    for (auto& l : raw_labels) l = (l == pos) ? pos : "rest";
  }

  // Order classes by descending count, then first appearance.
  std::vector<std::string> names;
  std::map<std::string, std::size_t> counts;
  for (const auto& l : raw_labels) {
    if (counts[l]++ == 0) names.push_back(l);
  }
  if (names.size() < 2) throw std::invalid_argument("CSV: need at least two classes");
  std::stable_sort(names.begin(), names.end(),
                   [&](const std::string& a, const std::string& b) { return counts[a] > counts[b]; });
  if (spec.positive_class && names.size() == 2 && names[1] != *spec.positive_class &&
      counts[names[0]] == counts[names[1]]) {
    std::swap(names[0], names[1]);
  }
  std::map<std::string, Label> index;
  for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<Label>(i);

  Dataset ds;
  ds.features = MinMaxScaler::fit(features).apply(features);
  ds.classes = names.size();
  ds.class_names = names;
  ds.labels.reserve(raw_labels.size());
  for (const auto& l : raw_labels) ds.labels.push_back(index[l]);
  return ds;
}

Dataset ingest_csv(const std::string& path, const CsvSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open dataset '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), spec);
}

std::vector<std::size_t> stratified_folds(std::span<const Label> labels, std::size_t classes,
                                          std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("stratified_folds: need at least two folds");
  std::vector<std::vector<std::size_t>> members(classes);
  for (std::size_t i = 0; i < labels.size(); ++i) members[static_cast<std::size_t>(labels[i])].push_back(i);
  Rng rng(seed);
  std::vector<std::size_t> fold(labels.size(), 0);
  std::size_t offset = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    auto& idx = members[c];
    if (idx.size() < folds) {
      throw std::invalid_argument("stratified_folds: class " + std::to_string(c) + " has " +
                                  std::to_string(idx.size()) + " instances, fewer than " +
                                  std::to_string(folds) + " folds");
    }
    rng.shuffle(idx.begin(), idx.end());
    for (std::size_t k = 0; k < idx.size(); ++k) fold[idx[k]] = (offset + k) % folds;
    // Rotating the start keeps total fold sizes balanced across classes.
    offset = (offset + idx.size()) % folds;
  }
  return fold;
}

}  // namespace cfl
