#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ccc45 {

/// Numeric decision table: instances, integer class labels and the class-name
/// mapping. Feature values are stored column-major since split search scans
/// one attribute at a time. Immutable after construction.
class Dataset {
 public:
  /// `rows[i]` is instance i. Labels index into `class_names`.
  Dataset(const std::vector<std::vector<double>>& rows, std::vector<int> labels,
          std::vector<std::string> attribute_names, std::vector<std::string> class_names);

  std::size_t num_instances() const { return labels_.size(); }
  std::size_t num_attributes() const { return columns_.size(); }
  std::size_t num_classes() const { return class_names_.size(); }

  double value(std::size_t row, std::size_t attribute) const { return columns_[attribute][row]; }
  std::span<const double> column(std::size_t attribute) const { return columns_.at(attribute); }
  int label(std::size_t row) const { return labels_[row]; }
  std::span<const int> labels() const { return labels_; }
  std::vector<double> instance(std::size_t row) const;

  const std::vector<std::string>& attribute_names() const { return attribute_names_; }
  const std::vector<std::string>& class_names() const { return class_names_; }

 private:
  std::vector<std::vector<double>> columns_;
  std::vector<int> labels_;
  std::vector<std::string> attribute_names_;
  std::vector<std::string> class_names_;
};

/// Rows of a shared Dataset selected by index. Never copies feature data.
class InstanceSubset {
 public:
  /// Indices must be distinct and in range.
  InstanceSubset(std::shared_ptr<const Dataset> data, std::vector<std::size_t> indices);

  static InstanceSubset all(std::shared_ptr<const Dataset> data);

  const Dataset& dataset() const { return *data_; }
  const std::shared_ptr<const Dataset>& dataset_ptr() const { return data_; }
  std::span<const std::size_t> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }

  /// Class counts over the subset, one entry per class of the parent.
  std::vector<std::size_t> class_histogram() const;

 private:
  std::shared_ptr<const Dataset> data_;
  std::vector<std::size_t> indices_;
};

/// Reads a comma-separated table with one header row. The label column is
/// chosen by name, or is the last column when `label_column` is empty. Class
/// names map to indices in order of first appearance.
Dataset load_csv(const std::filesystem::path& path,
                 const std::optional<std::string>& label_column = std::nullopt);
Dataset parse_csv(std::istream& in, const std::optional<std::string>& label_column = std::nullopt);

/// Unstratified uniform random train/test partition. Train size is
/// round-half-up(train_fraction * |U|); both sides are returned sorted.
std::pair<InstanceSubset, InstanceSubset> split_train_test(std::shared_ptr<const Dataset> data,
                                                           double train_fraction,
                                                           std::mt19937_64& rng);

}  // namespace ccc45
