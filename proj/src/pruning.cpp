#include "ccc45/pruning.hpp"

#include "ccc45/errors.hpp"

namespace ccc45 {

namespace {

void check_costs(const DecisionTree& tree, const TestCostVector& tc, const MisclassificationMatrix& mc) {
  if (tc.size() != tree.tc_used().size()) throw ArgumentError("test cost vector length differs from the tree's");
  if (mc.num_classes() != tree.num_classes()) throw ArgumentError("misclassification matrix size differs from the tree's");
}

// All instances reaching a leaf share its path, so per-instance sums reduce to
// count * path cost plus histogram-weighted mc.
void accumulate_subtree(std::span<const TreeNode> nodes, int id, AttributeSet& path,
                        const TestCostVector& tc, const MisclassificationMatrix& mc, double& test_total,
                        double& mc_total) {
  const TreeNode& n = nodes[static_cast<std::size_t>(id)];
  if (n.is_leaf()) {
    test_total += static_cast<double>(n.instance_count()) * total_test_cost(tc, path);
    for (std::size_t c = 0; c < n.histogram.size(); ++c) {
      mc_total += static_cast<double>(n.histogram[c]) * mc(c, static_cast<std::size_t>(n.leaf_class));
    }
    return;
  }
  const auto a = static_cast<std::size_t>(n.attribute);
  const bool added = path.insert(a).second;
  accumulate_subtree(nodes, n.left, path, tc, mc, test_total, mc_total);
  accumulate_subtree(nodes, n.right, path, tc, mc, test_total, mc_total);
  if (added) path.erase(a);
}

CostBreakdown subtree_cost_on(std::span<const TreeNode> nodes, int id, AttributeSet path,
                              const TestCostVector& tc, const MisclassificationMatrix& mc) {
  double test_total = 0.0, mc_total = 0.0;
  accumulate_subtree(nodes, id, path, tc, mc, test_total, mc_total);
  return make_breakdown(test_total, mc_total, nodes[static_cast<std::size_t>(id)].instance_count());
}

CostBreakdown leaf_cost_on(const TreeNode& n, const AttributeSet& path, const TestCostVector& tc,
                           const MisclassificationMatrix& mc) {
  const auto majority = static_cast<std::size_t>(n.majority_class());
  const std::size_t count = n.instance_count();
  double mc_total = 0.0;
  for (std::size_t c = 0; c < n.histogram.size(); ++c) {
    mc_total += static_cast<double>(n.histogram[c]) * mc(c, majority);
  }
  return make_breakdown(static_cast<double>(count) * total_test_cost(tc, path), mc_total, count);
}

}  // namespace

CostBreakdown subtree_cost(const DecisionTree& tree, int node_id, const TestCostVector& tc,
                           const MisclassificationMatrix& mc) {
  check_costs(tree, tc, mc);
  return subtree_cost_on(tree.nodes(), node_id, tree.attributes_above(node_id), tc, mc);
}

CostBreakdown leaf_replacement_cost(const DecisionTree& tree, int node_id, const TestCostVector& tc,
                                    const MisclassificationMatrix& mc) {
  check_costs(tree, tc, mc);
  return leaf_cost_on(tree.node(node_id), tree.attributes_above(node_id), tc, mc);
}

PruneResult post_prune(const DecisionTree& tree, const TestCostVector& tc,
                       const MisclassificationMatrix& mc, const PruneOptions& options) {
  check_costs(tree, tc, mc);
  // Collapsing a node never changes its ancestors, so the original parent
  // links stay valid for the working copy.
  std::vector<TreeNode> work(tree.nodes().begin(), tree.nodes().end());
  std::vector<PruneTraceEntry> trace;

  auto visit = [&](auto&& self, int id) -> void {
    const TreeNode& original = tree.node(id);
    if (original.is_leaf()) return;
    self(self, original.left);
    self(self, original.right);

    const AttributeSet above = tree.attributes_above(id);
    PruneTraceEntry entry;
    entry.step = trace.size() + 1;
    entry.node_id = id;
    entry.node_name = original.name;
    entry.attribute = static_cast<std::size_t>(original.attribute);
    entry.cost_unpruned = subtree_cost_on(tree.nodes(), id, above, tc, mc);
    entry.cost_keep = subtree_cost_on(work, id, above, tc, mc);
    entry.cost_prune = leaf_cost_on(work[static_cast<std::size_t>(id)], above, tc, mc);
    entry.instance_count = original.instance_count();
    entry.pruned = options.prune_on_tie ? entry.cost_prune.average_cost <= entry.cost_keep.average_cost
                                        : entry.cost_prune.average_cost < entry.cost_keep.average_cost;
    if (entry.pruned) {
      TreeNode& n = work[static_cast<std::size_t>(id)];
      n.left = n.right = n.attribute = TreeNode::kNone;
      n.threshold = 0.0;
      n.leaf_class = n.majority_class();
    }
    trace.push_back(std::move(entry));
  };
  visit(visit, 0);

  return PruneResult{DecisionTree(compact_preorder(work), tree.lambda_used(), tree.tc_used()),
                     std::move(trace)};
}

}  // namespace ccc45
