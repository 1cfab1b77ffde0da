#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ccc45/cost_model.hpp"
#include "ccc45/dataset.hpp"
#include "ccc45/tree.hpp"

namespace ccc45 {

struct InductionConfig {
  /// Smallest child a split may create. Nodes with fewer than twice this
  /// many instances become leaves.
  std::size_t min_leaf_size = 2;
  /// Effective test cost of an attribute already measured on the current
  /// path.
  double reused_attribute_cost = 1.0;
};

struct SplitCandidate {
  std::size_t attribute = 0;
  double threshold = 0.0;
  double gain_ratio = 0.0;
  double heuristic_value = 0.0;
};

/// Shannon entropy in bits.
double entropy(std::span<const std::size_t> histogram);

/// Information gain divided by split information for `value <= threshold`.
double gain_ratio(const InstanceSubset& subset, std::size_t attribute, double threshold);

/// Midpoints between consecutive distinct values of the attribute.
std::vector<double> candidate_thresholds(const InstanceSubset& subset, std::size_t attribute);

/// GainRatio(a) * tc(a)^lambda. An attribute already tested on the path is
/// charged `reused_cost` instead of tc(a).
double heuristic(double gain_ratio_value, double tc_a, double lambda, bool attribute_already_tested,
                 double reused_cost = 1.0);

/// Highest-heuristic (attribute, threshold) among splits with positive gain.
/// Ties go to the lower attribute index, then the lower threshold.
std::optional<SplitCandidate> best_split(const InstanceSubset& subset, const TestCostVector& tc,
                                         double lambda, const AttributeSet& tested_on_path,
                                         const InductionConfig& config = {});

/// Top-down induction with the cost-weighted gain ratio heuristic.
DecisionTree build_tree(const InstanceSubset& train, const TestCostVector& tc, double lambda,
                        const InductionConfig& config = {});

}  // namespace ccc45
