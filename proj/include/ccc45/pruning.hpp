#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ccc45/cost_model.hpp"
#include "ccc45/evaluation.hpp"
#include "ccc45/tree.hpp"

namespace ccc45 {

struct PruneOptions {
  /// Replace a subtree when the leaf is no worse, not only strictly better.
  bool prune_on_tie = false;
};

struct PruneTraceEntry {
  std::size_t step = 0;     // 1-based visiting order
  int node_id = 0;          // pre-order id in the input tree
  std::string node_name;
  std::size_t attribute = 0;
  CostBreakdown cost_keep;      // subtree as it stands when visited
  CostBreakdown cost_prune;     // subtree replaced by its majority leaf
  CostBreakdown cost_unpruned;  // subtree of the input tree, before any pruning
  std::size_t instance_count = 0;
  bool pruned = false;
};

struct PruneResult {
  DecisionTree tree;
  std::vector<PruneTraceEntry> trace;
};

/// Cost of the subtree at `node_id` over the training instances reaching it.
/// Each instance pays for every distinct attribute on its full root-to-leaf
/// path plus mc(true class, leaf class).
CostBreakdown subtree_cost(const DecisionTree& tree, int node_id, const TestCostVector& tc,
                           const MisclassificationMatrix& mc);

/// Cost if `node_id` were a leaf predicting its majority class: instances
/// pay only for attributes above the node.
CostBreakdown leaf_replacement_cost(const DecisionTree& tree, int node_id, const TestCostVector& tc,
                                    const MisclassificationMatrix& mc);

/// Post-order cost-based pruning on the training partitions stored in the
/// tree. A node is collapsed when its leaf cost is strictly below the cost of
/// its current (possibly already pruned) subtree.
PruneResult post_prune(const DecisionTree& tree, const TestCostVector& tc,
                       const MisclassificationMatrix& mc, const PruneOptions& options = {});

}  // namespace ccc45
