#include "ccc45/competition.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "ccc45/errors.hpp"

namespace ccc45 {

void LambdaGrid::validate() const {
  if (!std::isfinite(start) || !std::isfinite(end) || !std::isfinite(step)) {
    throw ValidationError("lambda grid values must be finite");
  }
  if (!(start <= end && end <= 0.0)) throw ValidationError("lambda grid needs start <= end <= 0");
  if (!(step > 0.0)) throw ValidationError("lambda grid step must be > 0");
}

std::vector<double> LambdaGrid::values() const {
  validate();
  constexpr double kTol = 1e-9;
  const auto last = static_cast<std::size_t>(std::floor((end - start) / step + kTol));
  if (std::abs(start + static_cast<double>(last) * step - end) > kTol) {
    throw ValidationError("lambda grid step does not land on the end value");
  }
  std::vector<double> out(last + 1);
  for (std::size_t i = 0; i <= last; ++i) out[i] = start + static_cast<double>(i) * step;
  out.back() = end;
  return out;
}

std::size_t select_winner(std::span<const SweepRecord> records) {
  if (records.empty()) throw ArgumentError("no sweep records to choose from");
  std::size_t best = 0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    // Records are in ascending lambda, so <= keeps the largest tied lambda.
    if (records[i].training.average_cost <= records[best].training.average_cost) best = i;
  }
  return best;
}

SweepResult run_competition(const InstanceSubset& train, const TestCostVector& tc,
                            const MisclassificationMatrix& mc, const LambdaGrid& grid, bool prune,
                            const std::optional<InstanceSubset>& test,
                            const CompetitionOptions& options) {
  if (train.empty()) throw ArgumentError("competition needs a non-empty training set");
  const std::vector<double> lambdas = grid.values();

  auto one = [&](double lambda) {
    DecisionTree tree = build_tree(train, tc, lambda, options.induction);
    if (prune) tree = post_prune(tree, tc, mc, options.pruning).tree;
    CostBreakdown training = average_cost(tree, train, tc, mc);
    std::optional<CostBreakdown> testing;
    if (test) testing = average_cost(tree, *test, tc, mc);
    return SweepRecord{lambda, std::move(tree), training, testing};
  };

  SweepResult result;
  result.records.reserve(lambdas.size());
  if (options.parallel) {
    std::vector<std::future<SweepRecord>> pending;
    for (double lambda : lambdas) pending.push_back(std::async(std::launch::async, one, lambda));
    for (auto& f : pending) result.records.push_back(f.get());
  } else {
    for (double lambda : lambdas) result.records.push_back(one(lambda));
  }
  result.winner_index = select_winner(result.records);
  return result;
}

bool co_minimal(double value, double minimum) {
  return value - minimum <= 1e-9 * std::max({std::abs(value), std::abs(minimum), 1.0});
}

std::map<double, std::size_t> win_counts(std::span<const SweepResult> results) {
  std::map<double, std::size_t> wins;
  if (results.empty()) return wins;
  std::vector<double> grid;
  for (const auto& r : results.front().records) grid.push_back(r.lambda);
  for (double lambda : grid) wins[lambda] = 0;
  for (const SweepResult& result : results) {
    if (result.records.size() != grid.size()) throw ArgumentError("sweeps use different lambda grids");
    double minimum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const SweepRecord& r = result.records[i];
      if (r.lambda != grid[i]) throw ArgumentError("sweeps use different lambda grids");
      if (!r.testing) throw ArgumentError("sweep record has no testing cost");
      minimum = i == 0 ? r.testing->average_cost : std::min(minimum, r.testing->average_cost);
    }
    for (const SweepRecord& r : result.records) {
      if (co_minimal(r.testing->average_cost, minimum)) ++wins[r.lambda];
    }
  }
  return wins;
}

}  // namespace ccc45
