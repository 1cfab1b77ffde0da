#include "ccc45/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "ccc45/errors.hpp"

namespace ccc45 {

Dataset::Dataset(const std::vector<std::vector<double>>& rows, std::vector<int> labels,
                 std::vector<std::string> attribute_names, std::vector<std::string> class_names)
    : labels_(std::move(labels)),
      attribute_names_(std::move(attribute_names)),
      class_names_(std::move(class_names)) {
  if (rows.empty()) throw StructureError("dataset has no instances");
  if (rows.size() != labels_.size()) {
    throw StructureError("dataset has " + std::to_string(rows.size()) + " instances but " +
                         std::to_string(labels_.size()) + " labels");
  }
  const std::size_t width = rows.front().size();
  if (width == 0) throw StructureError("dataset has no conditional attributes");
  if (class_names_.size() < 2) {
    throw StructureError("dataset needs at least 2 classes, found " +
                         std::to_string(class_names_.size()));
  }
  if (attribute_names_.empty()) {
    for (std::size_t a = 0; a < width; ++a) attribute_names_.push_back("a" + std::to_string(a + 1));
  }
  if (attribute_names_.size() != width) {
    throw StructureError("attribute name count does not match feature width");
  }
  columns_.assign(width, std::vector<double>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width) {
      throw StructureError("instance " + std::to_string(i) + " has " +
                           std::to_string(rows[i].size()) + " features, expected " +
                           std::to_string(width));
    }
    for (std::size_t a = 0; a < width; ++a) columns_[a][i] = rows[i][a];
  }
  const int k = static_cast<int>(class_names_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 0 || labels_[i] >= k) {
      throw StructureError("label of instance " + std::to_string(i) + " is outside [0, " +
                           std::to_string(k - 1) + "]");
    }
  }
}

std::vector<double> Dataset::instance(std::size_t row) const {
  std::vector<double> out(columns_.size());
  for (std::size_t a = 0; a < columns_.size(); ++a) out[a] = columns_[a][row];
  return out;
}

InstanceSubset::InstanceSubset(std::shared_ptr<const Dataset> data, std::vector<std::size_t> indices)
    : data_(std::move(data)), indices_(std::move(indices)) {
  if (!data_) throw ArgumentError("instance subset needs a dataset");
  std::vector<char> seen(data_->num_instances(), 0);
  for (std::size_t i : indices_) {
    if (i >= seen.size()) throw ArgumentError("row index " + std::to_string(i) + " out of range");
    if (seen[i]) throw ArgumentError("row index " + std::to_string(i) + " repeated");
    seen[i] = 1;
  }
}

InstanceSubset InstanceSubset::all(std::shared_ptr<const Dataset> data) {
  if (!data) throw ArgumentError("instance subset needs a dataset");
  std::vector<std::size_t> indices(data->num_instances());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  return InstanceSubset(std::move(data), std::move(indices));
}

std::vector<std::size_t> InstanceSubset::class_histogram() const {
  std::vector<std::size_t> hist(data_->num_classes(), 0);
  for (std::size_t i : indices_) ++hist[static_cast<std::size_t>(data_->label(i))];
  return hist;
}

namespace {

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r\n");
  s = s.substr(begin, end - begin + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

Dataset parse_csv(std::istream& in, const std::optional<std::string>& label_column) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    header = split_fields(line);
    break;
  }
  if (header.empty()) throw StructureError("CSV input is empty");
  if (header.size() < 2) throw StructureError("CSV needs at least one feature and a label column");

  std::size_t label_index = header.size() - 1;
  if (label_column && !label_column->empty()) {
    auto it = std::find(header.begin(), header.end(), *label_column);
    if (it == header.end()) throw StructureError("label column '" + *label_column + "' not in header");
    label_index = static_cast<std::size_t>(it - header.begin());
  }
  std::vector<std::string> attribute_names;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != label_index) attribute_names.push_back(header[c]);
  }

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::vector<std::string> class_names;
  std::unordered_map<std::string, int> class_index;
  std::size_t row_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    ++row_no;
    auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw StructureError("row " + std::to_string(row_no) + " (line " + std::to_string(line_no) +
                           ") has " + std::to_string(fields.size()) + " fields, header has " +
                           std::to_string(header.size()));
    }
    std::vector<double> row;
    row.reserve(header.size() - 1);
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (c == label_index) continue;
      const std::string& cell = fields[c];
      double value = 0.0;
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      if (!cell.empty() && *first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw ParseError("row " + std::to_string(row_no) + " (line " + std::to_string(line_no) +
                         "), column '" + header[c] + "': cannot parse '" + cell +
                         "' as a finite number");
      }
      row.push_back(value);
    }
    const std::string& name = fields[label_index];
    if (name.empty()) {
      throw ParseError("row " + std::to_string(row_no) + " (line " + std::to_string(line_no) +
                       "): empty class label");
    }
    auto [it, inserted] = class_index.try_emplace(name, static_cast<int>(class_names.size()));
    if (inserted) class_names.push_back(name);
    labels.push_back(it->second);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw StructureError("CSV has a header but no data rows");
  if (class_names.size() < 2) {
    throw StructureError("CSV labels contain " + std::to_string(class_names.size()) +
                         " class; at least 2 are required");
  }
  return Dataset(rows, std::move(labels), std::move(attribute_names), std::move(class_names));
}

Dataset load_csv(const std::filesystem::path& path, const std::optional<std::string>& label_column) {
  std::ifstream in(path);
  if (!in) throw StructureError("cannot open data file " + path.string());
  return parse_csv(in, label_column);
}

std::pair<InstanceSubset, InstanceSubset> split_train_test(std::shared_ptr<const Dataset> data,
                                                           double train_fraction,
                                                           std::mt19937_64& rng) {
  if (!data) throw ArgumentError("split needs a dataset");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ArgumentError("train fraction must lie in (0, 1)");
  }
  const std::size_t n = data->num_instances();
  const auto train_size = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n) + 0.5));
  if (train_size < 1 || train_size >= n) {
    throw ArgumentError("train fraction " + std::to_string(train_fraction) + " on " +
                        std::to_string(n) + " instances leaves an empty side");
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(train_size));
  std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(train_size), order.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {InstanceSubset(data, std::move(train)), InstanceSubset(data, std::move(test))};
}

}  // namespace ccc45
