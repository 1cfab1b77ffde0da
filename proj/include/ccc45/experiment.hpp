#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccc45/competition.hpp"
#include "ccc45/cost_model.hpp"
#include "ccc45/dataset.hpp"

namespace ccc45 {

enum class PruneMode { None, Post, Both };

std::string_view to_string(PruneMode mode);
PruneMode parse_prune_mode(std::string_view name);

struct ExperimentConfig {
  std::filesystem::path data_path;
  std::optional<std::string> label_column;
  /// 1.0 trains and tests on the full dataset.
  double train_fraction = 0.6;
  std::size_t trials = 100;
  std::uint64_t master_seed = 0;
  CostDistributionSpec cost_distribution;
  /// Replaces random test costs in every trial.
  std::optional<TestCostVector> fixed_test_costs;
  /// Defaults to [[0, 500], [50, 0]] for two-class data.
  std::optional<MisclassificationMatrix> mc_matrix;
  LambdaGrid grid;
  PruneMode prune_mode = PruneMode::Both;
  CompetitionOptions options;
  /// Run only this trial index (replay); seeds are unchanged.
  std::optional<std::size_t> only_trial;
  std::size_t threads = 1;
};

struct TrialReportRow {
  std::size_t trial = 0;
  double lambda = 0.0;
  bool pruned = false;
  double training_cost = 0.0;
  double testing_cost = 0.0;
  std::size_t node_count = 0;
  /// Training-cost reduction from pruning; set when both modes ran and the
  /// unpruned cost is positive.
  std::optional<double> reduction_ratio;
  bool winner = false;

  bool operator==(const TrialReportRow&) const = default;
};

struct ExperimentReport {
  std::vector<TrialReportRow> rows;
  std::vector<std::string> class_names;
  std::string csv;
  std::string summary_json;
};

/// Counter-based per-trial seed: splitmix64 of master + golden * (trial + 1).
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::size_t trial);

/// Checks the config and loads its dataset; throws before any trial runs.
std::shared_ptr<const Dataset> prepare_experiment(const ExperimentConfig& config);

ExperimentReport run_experiment(const ExperimentConfig& config);
ExperimentReport run_experiment(const ExperimentConfig& config,
                                std::shared_ptr<const Dataset> data);

/// Rows ordered by (trial, lambda, pruned flag).
std::string rows_to_csv(std::span<const TrialReportRow> rows);
std::vector<TrialReportRow> rows_from_csv(std::string_view csv);

/// Aggregates win counts, per-lambda mean costs and reduction ratios, and ar.
/// Depends only on the rows, so it can be recomputed from the CSV.
std::string report_summary(std::span<const TrialReportRow> rows,
                           std::span<const std::string> class_names = {});

/// Shortest round-trip decimal text of a double.
std::string format_double(double value);

}  // namespace ccc45
