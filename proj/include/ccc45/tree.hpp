#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccc45/cost_model.hpp"

namespace ccc45 {

/// One node of a binary threshold tree. Nodes live in a flat pre-order
/// vector owned by DecisionTree; children are referenced by index.
struct TreeNode {
  static constexpr int kNone = -1;

  int attribute = kNone;    // internal only
  double threshold = 0.0;   // value <= threshold goes left
  int left = kNone;
  int right = kNone;
  int leaf_class = 0;       // meaningful for leaves
  std::vector<std::size_t> histogram;  // training class counts reaching the node
  std::vector<std::size_t> instances;  // training rows; empty for deserialized trees
  std::string name;                    // optional display label

  bool is_leaf() const { return left == kNone; }
  std::size_t instance_count() const;
  /// Majority class of the histogram, ties to the lowest index.
  int majority_class() const;

  bool operator==(const TreeNode&) const = default;
};

/// Majority class of a histogram, ties to the lowest index.
int majority_class(std::span<const std::size_t> histogram);

struct Classification {
  int predicted_class = 0;
  AttributeSet tested_attributes;  // A(x): distinct attributes on the path
};

class DecisionTree {
 public:
  /// `nodes[0]` is the root; nodes must be in pre-order (left subtree first)
  /// and every node reachable exactly once. Internal histograms are checked
  /// against the sum of their children.
  DecisionTree(std::vector<TreeNode> nodes, double lambda_used, TestCostVector tc_used);

  const TreeNode& root() const { return nodes_.front(); }
  const TreeNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  std::span<const TreeNode> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t leaf_count() const;
  std::size_t depth() const;

  std::size_t num_classes() const { return num_classes_; }
  double lambda_used() const { return lambda_used_; }
  const TestCostVector& tc_used() const { return tc_used_; }

  int parent(int id) const { return parents_.at(static_cast<std::size_t>(id)); }
  /// Distinct attributes tested on the path from the root down to, but
  /// excluding, node `id`.
  AttributeSet attributes_above(int id) const;

  /// Walks from the root (<= goes left).
  Classification classify(std::span<const double> instance) const;

  /// Copy with node `id` collapsed into a majority leaf; descendants dropped
  /// and remaining nodes renumbered in pre-order.
  DecisionTree with_leaf_at(int id) const;

  /// Structure, attributes, thresholds, leaf classes and histograms agree.
  /// Training instance lists and names are ignored.
  bool structurally_equal(const DecisionTree& other) const;

 private:
  std::vector<TreeNode> nodes_;
  std::vector<int> parents_;
  double lambda_used_ = 0.0;
  TestCostVector tc_used_;
  std::size_t num_classes_ = 0;
};

/// Collects nodes reachable from `root_id` into a fresh pre-order vector.
std::vector<TreeNode> compact_preorder(std::span<const TreeNode> nodes, int root_id = 0);

/// JSON tree format. Internal: {"attribute", "threshold", "left", "right"};
/// leaf: {"leaf", "histogram"}; both may carry "name". The wrapper holds
/// "lambda", "test_costs" and "root".
std::string serialize(const DecisionTree& tree);
DecisionTree deserialize(std::string_view text);

}  // namespace ccc45
