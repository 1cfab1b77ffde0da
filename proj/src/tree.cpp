#include "ccc45/tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "ccc45/errors.hpp"
#include "json.hpp"

namespace ccc45 {

std::size_t TreeNode::instance_count() const {
  return std::accumulate(histogram.begin(), histogram.end(), std::size_t{0});
}

int TreeNode::majority_class() const { return ccc45::majority_class(histogram); }

int majority_class(std::span<const std::size_t> histogram) {
  int best = 0;
  for (std::size_t c = 1; c < histogram.size(); ++c) {
    if (histogram[c] > histogram[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
  }
  return best;
}

DecisionTree::DecisionTree(std::vector<TreeNode> nodes, double lambda_used, TestCostVector tc_used)
    : nodes_(std::move(nodes)), lambda_used_(lambda_used), tc_used_(std::move(tc_used)) {
  if (nodes_.empty()) throw StructureError("tree has no nodes");
  if (!std::isfinite(lambda_used_) || lambda_used_ > 0.0) throw StructureError("tree lambda must be <= 0");
  if (tc_used_.size() == 0) throw StructureError("tree needs the test cost vector it was built with");
  num_classes_ = nodes_.front().histogram.size();
  if (num_classes_ < 2) throw StructureError("tree histograms need at least 2 classes");

  parents_.assign(nodes_.size(), TreeNode::kNone);
  // Iterative pre-order walk; ids must come out 0, 1, 2, ...
  std::size_t expected = 0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (static_cast<std::size_t>(id) != expected) throw StructureError("tree nodes are not in pre-order");
    ++expected;
    const TreeNode& n = nodes_[static_cast<std::size_t>(id)];
    const std::string where = "node " + std::to_string(id);
    if (n.histogram.size() != num_classes_) throw StructureError(where + ": histogram size mismatch");
    if (!n.instances.empty() && n.instances.size() != n.instance_count()) {
      throw StructureError(where + ": instance list disagrees with histogram");
    }
    if (n.is_leaf()) {
      if (n.right != TreeNode::kNone) throw StructureError(where + ": leaf with a right child");
      if (n.leaf_class < 0 || static_cast<std::size_t>(n.leaf_class) >= num_classes_) {
        throw StructureError(where + ": leaf class out of range");
      }
      if (n.instance_count() > 0 && n.leaf_class != n.majority_class()) {
        throw StructureError(where + ": leaf class is not the histogram majority");
      }
      continue;
    }
    if (n.attribute < 0 || static_cast<std::size_t>(n.attribute) >= tc_used_.size()) {
      throw StructureError(where + ": attribute index out of range");
    }
    if (!std::isfinite(n.threshold)) throw StructureError(where + ": threshold is not finite");
    const auto in_range = [&](int child) {
      return child > id && static_cast<std::size_t>(child) < nodes_.size();
    };
    if (!in_range(n.left) || !in_range(n.right)) throw StructureError(where + ": bad child index");
    parents_[static_cast<std::size_t>(n.left)] = id;
    parents_[static_cast<std::size_t>(n.right)] = id;
    const TreeNode& l = nodes_[static_cast<std::size_t>(n.left)];
    const TreeNode& r = nodes_[static_cast<std::size_t>(n.right)];
    for (std::size_t c = 0; c < num_classes_; ++c) {
      if (l.histogram.size() == num_classes_ && r.histogram.size() == num_classes_ &&
          n.histogram[c] != l.histogram[c] + r.histogram[c]) {
        throw StructureError(where + ": histogram is not the sum of its children");
      }
    }
    stack.push_back(n.right);
    stack.push_back(n.left);
  }
  if (expected != nodes_.size()) throw StructureError("tree has unreachable nodes");
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> d(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t id = 1; id < nodes_.size(); ++id) {
    d[id] = d[static_cast<std::size_t>(parents_[id])] + 1;
    deepest = std::max(deepest, d[id]);
  }
  return deepest;
}

AttributeSet DecisionTree::attributes_above(int id) const {
  AttributeSet out;
  for (int p = parent(id); p != TreeNode::kNone; p = parent(p)) {
    out.insert(static_cast<std::size_t>(nodes_[static_cast<std::size_t>(p)].attribute));
  }
  return out;
}

Classification DecisionTree::classify(std::span<const double> instance) const {
  if (instance.size() != tc_used_.size()) {
    throw ArgumentError("instance has " + std::to_string(instance.size()) + " features, tree expects " +
                        std::to_string(tc_used_.size()));
  }
  Classification out;
  const TreeNode* n = &nodes_.front();
  while (!n->is_leaf()) {
    const auto a = static_cast<std::size_t>(n->attribute);
    out.tested_attributes.insert(a);
    n = &nodes_[static_cast<std::size_t>(instance[a] <= n->threshold ? n->left : n->right)];
  }
  out.predicted_class = n->leaf_class;
  return out;
}

std::vector<TreeNode> compact_preorder(std::span<const TreeNode> nodes, int root_id) {
  std::vector<TreeNode> out;
  std::function<int(int)> copy = [&](int id) -> int {
    const TreeNode& src = nodes[static_cast<std::size_t>(id)];
    const int new_id = static_cast<int>(out.size());
    out.push_back(src);
    if (!src.is_leaf()) {
      const int l = copy(src.left);
      const int r = copy(src.right);
      out[static_cast<std::size_t>(new_id)].left = l;
      out[static_cast<std::size_t>(new_id)].right = r;
    }
    return new_id;
  };
  copy(root_id);
  return out;
}

DecisionTree DecisionTree::with_leaf_at(int id) const {
  std::vector<TreeNode> work(nodes_);
  TreeNode& n = work.at(static_cast<std::size_t>(id));
  n.left = n.right = n.attribute = TreeNode::kNone;
  n.threshold = 0.0;
  n.leaf_class = n.majority_class();
  return DecisionTree(compact_preorder(work), lambda_used_, tc_used_);
}

bool DecisionTree::structurally_equal(const DecisionTree& other) const {
  if (nodes_.size() != other.nodes_.size()) return false;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const TreeNode& a = nodes_[i];
    const TreeNode& b = other.nodes_[i];
    if (a.is_leaf() != b.is_leaf() || a.histogram != b.histogram) return false;
    if (a.is_leaf()) {
      if (a.leaf_class != b.leaf_class) return false;
    } else if (a.attribute != b.attribute || a.threshold != b.threshold || a.left != b.left ||
               a.right != b.right) {
      return false;
    }
  }
  return true;
}

namespace {

using nlohmann::json;

json node_to_json(const DecisionTree& tree, int id) {
  const TreeNode& n = tree.node(id);
  json j;
  if (n.is_leaf()) {
    j["leaf"] = n.leaf_class;
    j["histogram"] = n.histogram;
  } else {
    j["attribute"] = n.attribute;
    j["threshold"] = n.threshold;
    j["left"] = node_to_json(tree, n.left);
    j["right"] = node_to_json(tree, n.right);
  }
  if (!n.name.empty()) j["name"] = n.name;
  return j;
}

void reject_unknown_keys(const json& j, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ParseError(where + ": unexpected field '" + item.key() + "'");
    }
  }
}

const json& require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

int node_from_json(const json& j, std::vector<TreeNode>& out, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": node must be an object");
  const int id = static_cast<int>(out.size());
  out.emplace_back();
  TreeNode n;
  if (auto name = j.find("name"); name != j.end()) {
    if (!name->is_string()) throw ParseError(where + ": name must be a string");
    n.name = name->get<std::string>();
  }
  if (j.contains("leaf")) {
    reject_unknown_keys(j, {"leaf", "histogram", "name"}, where);
    const json& leaf = require(j, "leaf", where);
    const json& hist = require(j, "histogram", where);
    if (!leaf.is_number_integer()) throw ParseError(where + ": leaf must be an integer class");
    if (!hist.is_array()) throw ParseError(where + ": histogram must be an array");
    n.leaf_class = leaf.get<int>();
    for (const auto& c : hist) {
      if (!c.is_number_unsigned() && !(c.is_number_integer() && c.get<long long>() >= 0)) {
        throw ParseError(where + ": histogram entries must be nonnegative integers");
      }
      n.histogram.push_back(c.get<std::size_t>());
    }
    out[static_cast<std::size_t>(id)] = std::move(n);
    return id;
  }
  reject_unknown_keys(j, {"attribute", "threshold", "left", "right", "name"}, where);
  const json& attribute = require(j, "attribute", where);
  const json& threshold = require(j, "threshold", where);
  if (!attribute.is_number_integer() || attribute.get<long long>() < 0) {
    throw ParseError(where + ": attribute must be a nonnegative integer");
  }
  if (!threshold.is_number()) throw ParseError(where + ": threshold must be a number");
  n.attribute = attribute.get<int>();
  n.threshold = threshold.get<double>();
  n.left = node_from_json(require(j, "left", where), out, where + ".left");
  n.right = node_from_json(require(j, "right", where), out, where + ".right");
  const auto& lh = out[static_cast<std::size_t>(n.left)].histogram;
  const auto& rh = out[static_cast<std::size_t>(n.right)].histogram;
  if (lh.size() != rh.size()) throw ParseError(where + ": children disagree on class count");
  n.histogram.resize(lh.size());
  for (std::size_t c = 0; c < lh.size(); ++c) n.histogram[c] = lh[c] + rh[c];
  out[static_cast<std::size_t>(id)] = std::move(n);
  return id;
}

}  // namespace

std::string serialize(const DecisionTree& tree) {
  json j;
  j["lambda"] = tree.lambda_used();
  j["test_costs"] = std::vector<double>(tree.tc_used().values().begin(), tree.tc_used().values().end());
  j["root"] = node_to_json(tree, 0);
  return j.dump(2);
}

DecisionTree deserialize(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("tree is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("tree JSON must be an object");
  reject_unknown_keys(j, {"lambda", "test_costs", "root"}, "tree");
  const json& lambda = require(j, "lambda", "tree");
  const json& costs = require(j, "test_costs", "tree");
  if (!lambda.is_number()) throw ParseError("tree: lambda must be a number");
  if (!costs.is_array()) throw ParseError("tree: test_costs must be an array");
  std::vector<double> tc;
  for (const auto& c : costs) {
    if (!c.is_number()) throw ParseError("tree: test_costs must contain numbers");
    tc.push_back(c.get<double>());
  }
  std::vector<TreeNode> nodes;
  node_from_json(require(j, "root", "tree"), nodes, "root");
  try {
    return DecisionTree(std::move(nodes), lambda.get<double>(), TestCostVector(std::move(tc)));
  } catch (const StructureError& e) {
    throw ParseError(std::string("tree JSON is inconsistent: ") + e.what());
  } catch (const ValidationError& e) {
    throw ParseError(std::string("tree JSON is inconsistent: ") + e.what());
  }
}

}  // namespace ccc45
