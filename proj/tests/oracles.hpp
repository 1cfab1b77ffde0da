#pragma once

// Independent reference implementations used as test oracles. They share no
// code paths with the library beyond the public data types.

#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ccc45/ccc45.hpp"

namespace ccc45::testing {

std::string asset(const std::string& name);
std::shared_ptr<const Dataset> table1();
CostFile table2_costs();
DecisionTree fig1_tree();

/// 24 synthetic rows that the fixture tree routes exactly into its leaf
/// histograms.
std::shared_ptr<const Dataset> fig1_realisation();

/// H = log2(n) - (1/n) * sum c log2 c.
double reference_entropy(const std::vector<std::size_t>& counts);

struct ReferenceSplit {
  std::size_t attribute = 0;
  double threshold = 0.0;
  double gain_ratio = 0.0;
  double heuristic = 0.0;
};

/// Exhaustive search: explicit partitions for every attribute and every
/// midpoint, scored with reference_entropy and a direct pow.
std::optional<ReferenceSplit> brute_force_best_split(const InstanceSubset& subset, const TestCostVector& tc,
                                                     double lambda, const AttributeSet& tested,
                                                     std::size_t min_leaf, double reused_cost = 1.0);

/// Recursive descent returning (class, attributes in visiting order with repeats).
std::pair<int, std::vector<std::size_t>> naive_walk(const DecisionTree& tree, const std::vector<double>& x);

/// Per-instance Eq. (3) sum using naive_walk.
double brute_force_average_cost(const DecisionTree& tree, const InstanceSubset& data, const TestCostVector& tc,
                                const std::vector<std::vector<double>>& mc);

/// Features drawn from a small integer grid so thresholds tie often.
std::shared_ptr<const Dataset> random_dataset(std::mt19937_64& rng, std::size_t rows, std::size_t attributes,
                                              std::size_t classes, int value_levels = 8);

TestCostVector random_costs(std::mt19937_64& rng, std::size_t attributes);
MisclassificationMatrix random_mc(std::mt19937_64& rng, std::size_t classes);

/// Random threshold tree whose histograms come from routing `data` through it.
DecisionTree random_tree(std::mt19937_64& rng, const Dataset& data, std::size_t max_depth);

}  // namespace ccc45::testing
