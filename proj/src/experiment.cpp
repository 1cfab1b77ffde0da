#include "ccc45/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <map>
#include <sstream>
#include <tuple>

#include "ccc45/errors.hpp"
#include "json.hpp"

namespace ccc45 {

std::string_view to_string(PruneMode mode) {
  switch (mode) {
    case PruneMode::None: return "none";
    case PruneMode::Post: return "post";
    case PruneMode::Both: return "both";
  }
  return "none";
}

PruneMode parse_prune_mode(std::string_view name) {
  if (name == "none") return PruneMode::None;
  if (name == "post") return PruneMode::Post;
  if (name == "both") return PruneMode::Both;
  throw ArgumentError("unknown prune mode '" + std::string(name) + "'");
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::size_t trial) {
  // splitmix64 finaliser over a counter stream.
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(trial) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("cannot format double");
  return std::string(buf, ptr);
}

namespace {

void validate_config(const ExperimentConfig& config) {
  if (config.trials < 1) throw ValidationError("trials must be >= 1");
  if (!(config.train_fraction > 0.0 && config.train_fraction <= 1.0)) {
    throw ValidationError("train fraction must lie in (0, 1]");
  }
  if (config.threads < 1) throw ValidationError("threads must be >= 1");
  if (config.only_trial && *config.only_trial >= config.trials) {
    throw ValidationError("replayed trial index is outside the trial count");
  }
  config.cost_distribution.validate();
  config.grid.validate();
  config.grid.values();
}

MisclassificationMatrix resolve_mc(const ExperimentConfig& config, const Dataset& data) {
  if (config.mc_matrix) {
    if (config.mc_matrix->num_classes() != data.num_classes()) {
      throw ValidationError("misclassification matrix is " + std::to_string(config.mc_matrix->num_classes()) +
                            "x" + std::to_string(config.mc_matrix->num_classes()) + " but the data has " +
                            std::to_string(data.num_classes()) + " classes");
    }
    return *config.mc_matrix;
  }
  if (data.num_classes() != 2) {
    throw ValidationError("data has " + std::to_string(data.num_classes()) +
                          " classes; supply a misclassification matrix");
  }
  return MisclassificationMatrix::binary(500.0, 50.0);
}

std::vector<TrialReportRow> run_trial(const ExperimentConfig& config,
                                      const std::shared_ptr<const Dataset>& data,
                                      const MisclassificationMatrix& mc, std::size_t trial) {
  std::mt19937_64 rng(derive_trial_seed(config.master_seed, trial));
  const TestCostVector tc = config.fixed_test_costs
                                ? *config.fixed_test_costs
                                : generate_test_costs(config.cost_distribution, data->num_attributes(), rng);
  std::optional<InstanceSubset> train, test;
  if (config.train_fraction >= 1.0) {
    train = InstanceSubset::all(data);
    test = train;
  } else {
    auto [tr, te] = split_train_test(data, config.train_fraction, rng);
    train = std::move(tr);
    test = std::move(te);
  }

  std::vector<TrialReportRow> rows;
  auto emit = [&](const SweepResult& sweep, bool pruned) {
    for (std::size_t i = 0; i < sweep.records.size(); ++i) {
      const SweepRecord& r = sweep.records[i];
      TrialReportRow row;
      row.trial = trial;
      row.lambda = r.lambda;
      row.pruned = pruned;
      row.training_cost = r.training.average_cost;
      row.testing_cost = r.testing->average_cost;
      row.node_count = r.tree.size();
      row.winner = i == sweep.winner_index;
      rows.push_back(row);
    }
  };
  std::optional<SweepResult> unpruned, pruned;
  if (config.prune_mode != PruneMode::Post) {
    unpruned = run_competition(*train, tc, mc, config.grid, false, test, config.options);
    emit(*unpruned, false);
  }
  if (config.prune_mode != PruneMode::None) {
    pruned = run_competition(*train, tc, mc, config.grid, true, test, config.options);
    emit(*pruned, true);
  }
  if (unpruned && pruned) {
    const std::size_t n = unpruned->records.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double before = unpruned->records[i].training.average_cost;
      if (before > 0.0) {
        const double r = reduction_ratio(before, pruned->records[i].training.average_cost);
        rows[i].reduction_ratio = r;
        rows[n + i].reduction_ratio = r;
      }
    }
  }
  return rows;
}

bool row_less(const TrialReportRow& a, const TrialReportRow& b) {
  return std::tie(a.trial, a.lambda, a.pruned) < std::tie(b.trial, b.lambda, b.pruned);
}

}  // namespace

std::shared_ptr<const Dataset> prepare_experiment(const ExperimentConfig& config) {
  validate_config(config);
  auto data = std::make_shared<const Dataset>(load_csv(config.data_path, config.label_column));
  if (config.fixed_test_costs && config.fixed_test_costs->size() != data->num_attributes()) {
    throw ValidationError("cost file lists " + std::to_string(config.fixed_test_costs->size()) +
                          " test costs but the data has " + std::to_string(data->num_attributes()) +
                          " attributes");
  }
  resolve_mc(config, *data);
  return data;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  return run_experiment(config, prepare_experiment(config));
}

ExperimentReport run_experiment(const ExperimentConfig& config, std::shared_ptr<const Dataset> data) {
  validate_config(config);
  if (!data) throw ArgumentError("experiment needs a dataset");
  if (config.fixed_test_costs && config.fixed_test_costs->size() != data->num_attributes()) {
    throw ValidationError("fixed test costs do not match the attribute count");
  }
  const MisclassificationMatrix mc = resolve_mc(config, *data);

  std::vector<std::size_t> trials;
  if (config.only_trial) {
    trials.push_back(*config.only_trial);
  } else {
    for (std::size_t t = 0; t < config.trials; ++t) trials.push_back(t);
  }

  std::vector<TrialReportRow> rows;
  if (config.threads <= 1 || trials.size() <= 1) {
    for (std::size_t t : trials) {
      auto part = run_trial(config, data, mc, t);
      rows.insert(rows.end(), part.begin(), part.end());
    }
  } else {
    const std::size_t workers = std::min(config.threads, trials.size());
    std::vector<std::future<std::vector<TrialReportRow>>> pending;
    for (std::size_t w = 0; w < workers; ++w) {
      pending.push_back(std::async(std::launch::async, [&, w] {
        std::vector<TrialReportRow> out;
        for (std::size_t i = w; i < trials.size(); i += workers) {
          auto part = run_trial(config, data, mc, trials[i]);
          out.insert(out.end(), part.begin(), part.end());
        }
        return out;
      }));
    }
    for (auto& f : pending) {
      auto part = f.get();
      rows.insert(rows.end(), part.begin(), part.end());
    }
  }
  std::sort(rows.begin(), rows.end(), row_less);

  ExperimentReport report;
  report.class_names = data->class_names();
  report.csv = rows_to_csv(rows);
  report.summary_json = report_summary(rows, report.class_names);
  report.rows = std::move(rows);
  return report;
}

std::string rows_to_csv(std::span<const TrialReportRow> rows) {
  std::vector<TrialReportRow> sorted(rows.begin(), rows.end());
  std::stable_sort(sorted.begin(), sorted.end(), row_less);
  std::ostringstream out;
  out << "trial,lambda,pruned,train_cost,test_cost,nodes,reduction_ratio,winner\n";
  for (const auto& r : sorted) {
    out << r.trial << ',' << format_double(r.lambda) << ',' << (r.pruned ? 1 : 0) << ','
        << format_double(r.training_cost) << ',' << format_double(r.testing_cost) << ',' << r.node_count << ','
        << (r.reduction_ratio ? format_double(*r.reduction_ratio) : std::string()) << ','
        << (r.winner ? 1 : 0) << '\n';
  }
  return out.str();
}

namespace {

double parse_number(const std::string& cell, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError("report line " + std::to_string(line) + ": bad number '" + cell + "'");
  }
  return v;
}

}  // namespace

std::vector<TrialReportRow> rows_from_csv(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  std::vector<TrialReportRow> rows;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 8) throw ParseError("report line " + std::to_string(line_no) + ": expected 8 fields");
    TrialReportRow r;
    r.trial = static_cast<std::size_t>(parse_number(cells[0], line_no));
    r.lambda = parse_number(cells[1], line_no);
    r.pruned = cells[2] == "1";
    r.training_cost = parse_number(cells[3], line_no);
    r.testing_cost = parse_number(cells[4], line_no);
    r.node_count = static_cast<std::size_t>(parse_number(cells[5], line_no));
    if (!cells[6].empty()) r.reduction_ratio = parse_number(cells[6], line_no);
    r.winner = cells[7] == "1";
    rows.push_back(r);
  }
  return rows;
}

std::string report_summary(std::span<const TrialReportRow> rows, std::span<const std::string> class_names) {
  using nlohmann::ordered_json;
  if (rows.empty()) throw ArgumentError("summary of an empty report");

  std::vector<double> lambdas;
  std::vector<std::size_t> trials;
  for (const auto& r : rows) {
    lambdas.push_back(r.lambda);
    trials.push_back(r.trial);
  }
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  std::sort(trials.begin(), trials.end());
  trials.erase(std::unique(trials.begin(), trials.end()), trials.end());

  ordered_json summary;
  ordered_json mapping = ordered_json::array();
  for (std::size_t c = 0; c < class_names.size(); ++c) {
    mapping.push_back({{"class_index", c}, {"class_name", class_names[c]}});
  }
  summary["class_mapping"] = mapping;
  summary["trials"] = trials.size();
  summary["lambdas"] = lambdas;

  ordered_json modes = ordered_json::object();
  for (bool pruned : {false, true}) {
    // trial -> rows of this mode
    std::map<std::size_t, std::vector<const TrialReportRow*>> by_trial;
    for (const auto& r : rows) {
      if (r.pruned == pruned) by_trial[r.trial].push_back(&r);
    }
    if (by_trial.empty()) continue;
    std::map<double, double> train_sum, test_sum, node_sum;
    std::map<double, std::size_t> count, wins, winner_lambda;
    std::size_t winner_cominimal = 0;
    double winner_train = 0.0, winner_test = 0.0;
    for (const auto& [trial, group] : by_trial) {
      double minimum = group.front()->testing_cost;
      for (const auto* r : group) minimum = std::min(minimum, r->testing_cost);
      for (const auto* r : group) {
        train_sum[r->lambda] += r->training_cost;
        test_sum[r->lambda] += r->testing_cost;
        node_sum[r->lambda] += static_cast<double>(r->node_count);
        ++count[r->lambda];
        if (co_minimal(r->testing_cost, minimum)) ++wins[r->lambda];
        if (r->winner) {
          ++winner_lambda[r->lambda];
          winner_train += r->training_cost;
          winner_test += r->testing_cost;
          if (co_minimal(r->testing_cost, minimum)) ++winner_cominimal;
        }
      }
    }
    ordered_json per_lambda = ordered_json::array();
    for (double lambda : lambdas) {
      if (!count.contains(lambda)) continue;
      const double n = static_cast<double>(count[lambda]);
      per_lambda.push_back({{"lambda", lambda},
                            {"mean_training_cost", train_sum[lambda] / n},
                            {"mean_testing_cost", test_sum[lambda] / n},
                            {"mean_nodes", node_sum[lambda] / n},
                            {"wins", wins[lambda]},
                            {"selected_by_competition", winner_lambda[lambda]}});
    }
    const double n_trials = static_cast<double>(by_trial.size());
    ordered_json mode;
    mode["per_lambda"] = per_lambda;
    mode["winner_mean_training_cost"] = winner_train / n_trials;
    mode["winner_mean_testing_cost"] = winner_test / n_trials;
    mode["winner_test_cominimal_trials"] = winner_cominimal;
    mode["winner_test_cominimal_fraction"] = static_cast<double>(winner_cominimal) / n_trials;
    modes[pruned ? "post" : "none"] = mode;
  }
  summary["modes"] = modes;

  std::map<double, double> r_sum;
  std::map<double, std::size_t> r_count;
  for (const auto& r : rows) {
    if (r.pruned && r.reduction_ratio) {
      r_sum[r.lambda] += *r.reduction_ratio;
      ++r_count[r.lambda];
    }
  }
  if (!r_count.empty()) {
    ordered_json per_lambda = ordered_json::array();
    std::vector<double> means;
    for (double lambda : lambdas) {
      if (!r_count.contains(lambda)) {
        per_lambda.push_back({{"lambda", lambda}, {"mean_r", nullptr}, {"trials_with_r", 0}});
        continue;
      }
      const double mean = r_sum[lambda] / static_cast<double>(r_count[lambda]);
      means.push_back(mean);
      per_lambda.push_back({{"lambda", lambda}, {"mean_r", mean}, {"trials_with_r", r_count[lambda]}});
    }
    summary["reduction"] = {{"per_lambda", per_lambda}, {"ar", average_reduction_ratio(means)}};
  }
  return summary.dump(2) + "\n";
}

}  // namespace ccc45
