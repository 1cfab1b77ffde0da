#include "ccc45/induction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ccc45/errors.hpp"

namespace ccc45 {

namespace {

constexpr double kMinGain = 1e-12;
constexpr double kMinSplitInfo = 1e-12;
// Heuristic values this close (relative) are ties; mirrored splits differ
// only by round-off.
constexpr double kTieTolerance = 1e-12;

struct GainParts {
  double gain = 0.0;
  double split_info = 0.0;
};

double entropy_unchecked(std::span<const std::size_t> hist, std::size_t total) {
  double h = 0.0;
  const double n = static_cast<double>(total);
  for (std::size_t c : hist) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

GainParts split_parts(double parent_entropy, std::span<const std::size_t> left,
                      std::span<const std::size_t> right, std::size_t n_left, std::size_t n_right) {
  const double n = static_cast<double>(n_left + n_right);
  const double wl = static_cast<double>(n_left) / n;
  const double wr = static_cast<double>(n_right) / n;
  GainParts parts;
  parts.gain = parent_entropy - wl * entropy_unchecked(left, n_left) - wr * entropy_unchecked(right, n_right);
  const std::size_t sizes[2] = {n_left, n_right};
  parts.split_info = entropy_unchecked(sizes, n_left + n_right);
  return parts;
}

bool is_pure(std::span<const std::size_t> hist) {
  return std::count_if(hist.begin(), hist.end(), [](std::size_t c) { return c > 0; }) <= 1;
}

void check_config(const InductionConfig& config) {
  if (config.min_leaf_size < 1) throw ArgumentError("min_leaf_size must be >= 1");
  if (!(config.reused_attribute_cost > 0.0) || !std::isfinite(config.reused_attribute_cost)) {
    throw ArgumentError("reused_attribute_cost must be finite and > 0");
  }
}

}  // namespace

double entropy(std::span<const std::size_t> histogram) {
  const std::size_t total = std::accumulate(histogram.begin(), histogram.end(), std::size_t{0});
  if (total == 0) throw ArgumentError("entropy of an empty histogram");
  return entropy_unchecked(histogram, total);
}

double gain_ratio(const InstanceSubset& subset, std::size_t attribute, double threshold) {
  const Dataset& data = subset.dataset();
  if (attribute >= data.num_attributes()) throw ArgumentError("attribute index out of range");
  std::vector<std::size_t> left(data.num_classes(), 0), right(data.num_classes(), 0);
  std::size_t n_left = 0, n_right = 0;
  for (std::size_t row : subset.indices()) {
    const auto label = static_cast<std::size_t>(data.label(row));
    if (data.value(row, attribute) <= threshold) {
      ++left[label];
      ++n_left;
    } else {
      ++right[label];
      ++n_right;
    }
  }
  if (n_left == 0 || n_right == 0) throw ArgumentError("split leaves one side empty");
  const auto parent = subset.class_histogram();
  const GainParts parts = split_parts(entropy(parent), left, right, n_left, n_right);
  if (parts.split_info < kMinSplitInfo) return 0.0;
  return std::max(0.0, parts.gain) / parts.split_info;
}

std::vector<double> candidate_thresholds(const InstanceSubset& subset, std::size_t attribute) {
  const Dataset& data = subset.dataset();
  if (attribute >= data.num_attributes()) throw ArgumentError("attribute index out of range");
  std::vector<double> values;
  values.reserve(subset.size());
  for (std::size_t row : subset.indices()) values.push_back(data.value(row, attribute));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) out.push_back(std::midpoint(values[i], values[i + 1]));
  return out;
}

double heuristic(double gain_ratio_value, double tc_a, double lambda, bool attribute_already_tested,
                 double reused_cost) {
  if (lambda > 0.0) throw ArgumentError("lambda must be <= 0");
  if (!(tc_a > 0.0)) throw ArgumentError("test cost must be > 0");
  if (!(reused_cost > 0.0)) throw ArgumentError("reused attribute cost must be > 0");
  const double cost = attribute_already_tested ? reused_cost : tc_a;
  return gain_ratio_value * std::pow(cost, lambda);
}

std::optional<SplitCandidate> best_split(const InstanceSubset& subset, const TestCostVector& tc,
                                         double lambda, const AttributeSet& tested_on_path,
                                         const InductionConfig& config) {
  check_config(config);
  if (lambda > 0.0) throw ArgumentError("lambda must be <= 0");
  const Dataset& data = subset.dataset();
  if (tc.size() != data.num_attributes()) throw ArgumentError("test cost vector length differs from |C|");
  const std::size_t n = subset.size();
  if (n < 2 * config.min_leaf_size) return std::nullopt;
  const auto parent = subset.class_histogram();
  if (is_pure(parent)) return std::nullopt;
  const double parent_entropy = entropy(parent);
  const std::size_t k = data.num_classes();

  std::optional<SplitCandidate> best;
  std::vector<std::pair<double, int>> column(n);
  std::vector<std::size_t> left(k), right(k);
  for (std::size_t a = 0; a < data.num_attributes(); ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t row = subset.indices()[i];
      column[i] = {data.value(row, a), data.label(row)};
    }
    std::sort(column.begin(), column.end());
    std::fill(left.begin(), left.end(), 0);
    right = parent;
    const bool reused = tested_on_path.contains(a);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto label = static_cast<std::size_t>(column[i].second);
      ++left[label];
      --right[label];
      if (column[i].first == column[i + 1].first) continue;
      const std::size_t n_left = i + 1;
      const std::size_t n_right = n - n_left;
      if (n_left < config.min_leaf_size || n_right < config.min_leaf_size) continue;
      const GainParts parts = split_parts(parent_entropy, left, right, n_left, n_right);
      if (parts.gain <= kMinGain || parts.split_info < kMinSplitInfo) continue;
      const double ratio = parts.gain / parts.split_info;
      const double value = heuristic(ratio, tc[a], lambda, reused, config.reused_attribute_cost);
      if (!best || value > best->heuristic_value * (1.0 + kTieTolerance)) {
        best = SplitCandidate{a, std::midpoint(column[i].first, column[i + 1].first), ratio, value};
      }
    }
  }
  return best;
}

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const InstanceSubset& train, const TestCostVector& tc, double lambda,
              const InductionConfig& config)
      : train_(train), tc_(tc), lambda_(lambda), config_(config) {}

  int grow(std::vector<std::size_t> rows, const AttributeSet& tested) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    InstanceSubset here(train_.dataset_ptr(), std::move(rows));
    TreeNode node;
    node.histogram = here.class_histogram();

    std::optional<SplitCandidate> split;
    if (!is_pure(node.histogram) && here.size() >= 2 * config_.min_leaf_size) {
      split = best_split(here, tc_, lambda_, tested, config_);
    }
    node.instances.assign(here.indices().begin(), here.indices().end());
    if (!split) {
      node.leaf_class = majority_class(node.histogram);
      nodes_[static_cast<std::size_t>(id)] = std::move(node);
      return id;
    }

    const Dataset& data = train_.dataset();
    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t row : here.indices()) {
      (data.value(row, split->attribute) <= split->threshold ? left_rows : right_rows).push_back(row);
    }
    AttributeSet below = tested;
    below.insert(split->attribute);
    node.attribute = static_cast<int>(split->attribute);
    node.threshold = split->threshold;
    nodes_[static_cast<std::size_t>(id)] = std::move(node);
    const int l = grow(std::move(left_rows), below);
    const int r = grow(std::move(right_rows), below);
    nodes_[static_cast<std::size_t>(id)].left = l;
    nodes_[static_cast<std::size_t>(id)].right = r;
    return id;
  }

  std::vector<TreeNode> take() { return std::move(nodes_); }

 private:
  const InstanceSubset& train_;
  const TestCostVector& tc_;
  double lambda_;
  const InductionConfig& config_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

DecisionTree build_tree(const InstanceSubset& train, const TestCostVector& tc, double lambda,
                        const InductionConfig& config) {
  check_config(config);
  if (train.empty()) throw ArgumentError("cannot build a tree from an empty training set");
  if (lambda > 0.0 || !std::isfinite(lambda)) throw ArgumentError("lambda must be <= 0");
  if (tc.size() != train.dataset().num_attributes()) {
    throw ArgumentError("test cost vector length differs from |C|");
  }
  TreeBuilder builder(train, tc, lambda, config);
  builder.grow(std::vector<std::size_t>(train.indices().begin(), train.indices().end()), {});
  return DecisionTree(builder.take(), lambda, tc);
}

}  // namespace ccc45
