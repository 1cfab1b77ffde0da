#include "ccc45/evaluation.hpp"

#include <numeric>

#include "ccc45/errors.hpp"

namespace ccc45 {

CostBreakdown make_breakdown(double total_test_cost, double total_misclassification_cost,
                             std::size_t instance_count) {
  CostBreakdown out;
  out.total_test_cost = total_test_cost;
  out.total_misclassification_cost = total_misclassification_cost;
  out.instance_count = instance_count;
  out.average_cost = instance_count == 0
                         ? 0.0
                         : (total_test_cost + total_misclassification_cost) / static_cast<double>(instance_count);
  return out;
}

// The printed formula reads mc(C(x)),T(x)); the intended term is mc(C(x), T(x)).
CostBreakdown average_cost(const DecisionTree& tree, const InstanceSubset& data,
                           const TestCostVector& tc, const MisclassificationMatrix& mc) {
  if (data.empty()) throw ArgumentError("average cost over an empty dataset");
  const Dataset& d = data.dataset();
  if (d.num_attributes() != tree.tc_used().size() || tc.size() != d.num_attributes()) {
    throw ArgumentError("feature arity differs between tree, data and test costs");
  }
  if (mc.num_classes() != tree.num_classes() || d.num_classes() > mc.num_classes()) {
    throw ArgumentError("misclassification matrix size differs from the class count");
  }
  double test_total = 0.0;
  double mc_total = 0.0;
  std::vector<double> x(d.num_attributes());
  for (std::size_t row : data.indices()) {
    for (std::size_t a = 0; a < x.size(); ++a) x[a] = d.value(row, a);
    const Classification c = tree.classify(x);
    test_total += total_test_cost(tc, c.tested_attributes);
    mc_total += mc(static_cast<std::size_t>(d.label(row)), static_cast<std::size_t>(c.predicted_class));
  }
  return make_breakdown(test_total, mc_total, data.size());
}

double reduction_ratio(double ac_before, double ac_after) {
  if (!(ac_before > 0.0)) throw ArgumentError("reduction ratio needs a positive cost before pruning");
  return (ac_before - ac_after) / ac_before;
}

double average_reduction_ratio(std::span<const double> ratios) {
  if (ratios.empty()) throw ArgumentError("average reduction ratio of an empty list");
  return std::accumulate(ratios.begin(), ratios.end(), 0.0) / static_cast<double>(ratios.size());
}

}  // namespace ccc45
