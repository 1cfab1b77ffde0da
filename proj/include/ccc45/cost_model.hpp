#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ccc45 {

using AttributeSet = std::set<std::size_t>;

/// Per-attribute test costs. Every entry is finite and strictly positive:
/// the heuristic raises costs to a non-positive power.
class TestCostVector {
 public:
  TestCostVector() = default;
  explicit TestCostVector(std::vector<double> costs);

  std::size_t size() const { return costs_.size(); }
  double operator[](std::size_t attribute) const { return costs_[attribute]; }
  double at(std::size_t attribute) const;
  std::span<const double> values() const { return costs_; }

  TestCostVector scaled(double factor) const;

  bool operator==(const TestCostVector&) const = default;

 private:
  std::vector<double> costs_;
};

/// k x k misclassification costs, indexed (true class, predicted class).
/// Zero diagonal, nonnegative off-diagonal.
class MisclassificationMatrix {
 public:
  explicit MisclassificationMatrix(const std::vector<std::vector<double>>& rows);

  /// The usual two-class matrix [[0, false_positive], [false_negative, 0]].
  static MisclassificationMatrix binary(double cost_true0_pred1, double cost_true1_pred0);

  std::size_t num_classes() const { return k_; }
  double operator()(std::size_t true_class, std::size_t predicted) const {
    return entries_[true_class * k_ + predicted];
  }
  std::vector<std::vector<double>> rows() const;

 private:
  std::size_t k_ = 0;
  std::vector<double> entries_;
};

enum class CostDistribution { Uniform, Normal, Pareto };

std::string_view to_string(CostDistribution kind);
CostDistribution parse_cost_distribution(std::string_view name);

struct CostDistributionSpec {
  CostDistribution kind = CostDistribution::Uniform;
  double lower = 1.0;
  double upper = 10.0;
  double normal_mean = 5.5;
  double normal_sd = 2.0;
  double pareto_shape = 2.0;

  void validate() const;
};

/// Integer-valued random test costs in [lower, upper].
///   Uniform: uniform integers.
///   Normal:  N(mean, sd), rounded, clamped.
///   Pareto:  Pareto(shape, scale = lower), rounded, clamped.
TestCostVector generate_test_costs(const CostDistributionSpec& spec, std::size_t num_attributes,
                                   std::mt19937_64& rng);

/// tc(A(x)): each distinct attribute is charged once.
double total_test_cost(const TestCostVector& tc, const AttributeSet& attributes);

struct CostFile {
  std::optional<TestCostVector> test_costs;
  std::optional<MisclassificationMatrix> mc_matrix;
};

/// JSON object with optional `test_costs: [..]` and `mc_matrix: [[..], ..]`.
CostFile parse_cost_file(std::string_view json_text);
CostFile load_cost_file(const std::filesystem::path& path);

}  // namespace ccc45
