#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ccc45/cost_model.hpp"
#include "ccc45/dataset.hpp"
#include "ccc45/evaluation.hpp"
#include "ccc45/induction.hpp"
#include "ccc45/pruning.hpp"
#include "ccc45/tree.hpp"

namespace ccc45 {

/// Inclusive grid start, start+step, ..., end.
struct LambdaGrid {
  double start = -4.0;
  double end = 0.0;
  double step = 0.25;

  static LambdaGrid single(double lambda) { return {lambda, lambda, 1.0}; }

  void validate() const;
  std::vector<double> values() const;
};

struct SweepRecord {
  double lambda = 0.0;
  DecisionTree tree;
  CostBreakdown training;
  std::optional<CostBreakdown> testing;
};

struct SweepResult {
  std::vector<SweepRecord> records;  // ascending lambda
  std::size_t winner_index = 0;

  double winner_lambda() const { return records.at(winner_index).lambda; }
  const DecisionTree& winner_tree() const { return records.at(winner_index).tree; }
};

struct CompetitionOptions {
  InductionConfig induction;
  PruneOptions pruning;
  /// Build per-lambda trees on separate threads.
  bool parallel = false;
};

/// One tree per lambda, optionally post-pruned; the winner has the lowest
/// training average cost, ties going to the largest lambda. When `test` is
/// given every tree is also evaluated on it.
SweepResult run_competition(const InstanceSubset& train, const TestCostVector& tc,
                            const MisclassificationMatrix& mc, const LambdaGrid& grid, bool prune,
                            const std::optional<InstanceSubset>& test = std::nullopt,
                            const CompetitionOptions& options = {});

/// Index of the minimum-training-cost record, ties to the largest lambda.
std::size_t select_winner(std::span<const SweepRecord> records);

/// True when `value` is within 1e-9 relative of `minimum`.
bool co_minimal(double value, double minimum);

/// Per trial, every lambda attaining the minimal testing cost earns a win.
std::map<double, std::size_t> win_counts(std::span<const SweepResult> results);

}  // namespace ccc45
