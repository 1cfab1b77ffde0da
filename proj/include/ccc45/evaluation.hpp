#pragma once

#include <cstddef>
#include <span>

#include "ccc45/cost_model.hpp"
#include "ccc45/dataset.hpp"
#include "ccc45/tree.hpp"

namespace ccc45 {

struct CostBreakdown {
  double total_test_cost = 0.0;
  double total_misclassification_cost = 0.0;
  double average_cost = 0.0;
  std::size_t instance_count = 0;

  double total() const { return total_test_cost + total_misclassification_cost; }
};

CostBreakdown make_breakdown(double total_test_cost, double total_misclassification_cost,
                             std::size_t instance_count);

/// Mean over instances of tc(A(x)) + mc(C(x), T(x)), with A(x) and T(x)
/// taken from classify().
CostBreakdown average_cost(const DecisionTree& tree, const InstanceSubset& data,
                           const TestCostVector& tc, const MisclassificationMatrix& mc);

/// (before - after) / before.
double reduction_ratio(double ac_before, double ac_after);

/// Arithmetic mean of per-lambda reduction ratios.
double average_reduction_ratio(std::span<const double> ratios);

}  // namespace ccc45
