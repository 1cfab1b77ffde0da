// Command-line front end: train, prune, sweep, experiment.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ccc45/ccc45.hpp"
#include "json.hpp"

namespace {

using namespace ccc45;

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Options {
  std::string data;
  std::string label_column;
  std::optional<double> train_fraction;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::size_t threads = 1;

  std::string cost_file;
  std::string cost_dist = "uniform";
  CostDistributionSpec dist;
  std::string mc_file;
  double mc01 = 500.0;
  double mc10 = 50.0;

  std::optional<double> lambda;
  double lambda_start = -4.0;
  double lambda_end = 0.0;
  double lambda_step = 0.25;
  std::string prune;
  bool prune_on_tie = false;
  bool no_prune = false;
  std::size_t min_leaf = 2;

  std::string out_csv;
  std::string out_json;
  std::string tree_out;
  std::string fixture;
  std::optional<std::size_t> trial;
  bool replay = false;
};

void add_data_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--data", o.data, "CSV data file with a header row")->required();
  cmd->add_option("--label-column", o.label_column, "label column name (default: last column)");
  cmd->add_option("--train-fraction", o.train_fraction, "fraction of rows used for training");
  cmd->add_option("--seed", o.seed, "master random seed");
}

void add_cost_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--cost-file", o.cost_file, "JSON with test_costs and/or mc_matrix");
  cmd->add_option("--cost-dist", o.cost_dist, "uniform | normal | pareto")
      ->check(CLI::IsMember({"uniform", "normal", "pareto"}, CLI::ignore_case));
  cmd->add_option("--cost-lower", o.dist.lower, "lowest generated test cost");
  cmd->add_option("--cost-upper", o.dist.upper, "highest generated test cost");
  cmd->add_option("--normal-mean", o.dist.normal_mean, "mean of the normal cost distribution");
  cmd->add_option("--normal-sd", o.dist.normal_sd, "standard deviation of the normal cost distribution");
  cmd->add_option("--pareto-shape", o.dist.pareto_shape, "shape of the Pareto cost distribution");
  cmd->add_option("--mc-file", o.mc_file, "JSON with mc_matrix");
  cmd->add_option("--mc-01", o.mc01, "cost of predicting class 1 for a class-0 instance");
  cmd->add_option("--mc-10", o.mc10, "cost of predicting class 0 for a class-1 instance");
}

void add_grid_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--lambda", o.lambda, "single lambda value (overrides the grid)");
  cmd->add_option("--lambda-start", o.lambda_start, "first lambda of the grid");
  cmd->add_option("--lambda-end", o.lambda_end, "last lambda of the grid");
  cmd->add_option("--lambda-step", o.lambda_step, "grid step");
}

// Subcommands share one Options, so the default is applied when the mode is
// read rather than here.
void add_prune_flags(CLI::App* cmd, Options& o, const std::string& default_mode) {
  cmd->add_option("--prune", o.prune, "none | post | both (default " + default_mode + ")")->check(CLI::IsMember({"none", "post", "both"}));
  cmd->add_flag("--no-prune", o.no_prune, "same as --prune none");
  cmd->add_flag("--prune-on-tie", o.prune_on_tie, "also prune when the leaf costs the same");
  cmd->add_option("--min-leaf", o.min_leaf, "smallest leaf a split may create");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

std::string class_mapping_csv(const std::vector<std::string>& names) {
  std::string out = "class_index,class_name\n";
  for (std::size_t c = 0; c < names.size(); ++c) out += std::to_string(c) + "," + names[c] + "\n";
  return out;
}

nlohmann::ordered_json class_mapping_json(const std::vector<std::string>& names) {
  auto out = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < names.size(); ++c) out.push_back({{"class_index", c}, {"class_name", names[c]}});
  return out;
}

nlohmann::ordered_json breakdown_json(const CostBreakdown& c) {
  return {{"total_test_cost", c.total_test_cost},
          {"total_misclassification_cost", c.total_misclassification_cost},
          {"average_cost", c.average_cost},
          {"instances", c.instance_count}};
}

PruneMode prune_mode(const Options& o, std::string_view default_mode) {
  if (o.no_prune) return PruneMode::None;
  return parse_prune_mode(o.prune.empty() ? default_mode : std::string_view(o.prune));
}

LambdaGrid grid(const Options& o) {
  LambdaGrid g = o.lambda ? LambdaGrid::single(*o.lambda) : LambdaGrid{o.lambda_start, o.lambda_end, o.lambda_step};
  g.validate();
  g.values();
  return g;
}

CompetitionOptions competition_options(const Options& o) {
  CompetitionOptions c;
  c.induction.min_leaf_size = o.min_leaf;
  c.pruning.prune_on_tie = o.prune_on_tie;
  return c;
}

CostDistributionSpec distribution(const Options& o) {
  CostDistributionSpec spec = o.dist;
  spec.kind = parse_cost_distribution(o.cost_dist);
  spec.validate();
  return spec;
}

std::optional<CostFile> cost_file(const Options& o) {
  if (o.cost_file.empty()) return std::nullopt;
  return load_cost_file(o.cost_file);
}

MisclassificationMatrix resolve_mc(const Options& o, const std::optional<CostFile>& costs, std::size_t k) {
  std::optional<MisclassificationMatrix> mc;
  if (!o.mc_file.empty()) {
    auto f = load_cost_file(o.mc_file);
    if (!f.mc_matrix) throw ValidationError(o.mc_file + " has no mc_matrix");
    mc = f.mc_matrix;
  } else if (costs && costs->mc_matrix) {
    mc = costs->mc_matrix;
  } else if (k == 2) {
    mc = MisclassificationMatrix::binary(o.mc01, o.mc10);
  } else {
    throw ValidationError("data has " + std::to_string(k) + " classes; pass --mc-file");
  }
  if (mc->num_classes() != k) {
    throw ValidationError("misclassification matrix has " + std::to_string(mc->num_classes()) +
                          " classes, data has " + std::to_string(k));
  }
  return *mc;
}

std::shared_ptr<const Dataset> load_data(const Options& o) {
  std::optional<std::string> label;
  if (!o.label_column.empty()) label = o.label_column;
  return std::make_shared<const Dataset>(load_csv(o.data, label));
}

struct TrainingSetup {
  std::shared_ptr<const Dataset> data;
  TestCostVector tc;
  MisclassificationMatrix mc;
  InstanceSubset train;
  std::optional<InstanceSubset> test;
};

TrainingSetup setup(const Options& o, double default_fraction) {
  auto data = load_data(o);
  auto costs = cost_file(o);
  auto mc = resolve_mc(o, costs, data->num_classes());
  std::mt19937_64 rng(derive_trial_seed(o.seed, 0));
  TestCostVector tc;
  if (costs && costs->test_costs) {
    tc = *costs->test_costs;
    if (tc.size() != data->num_attributes()) throw ValidationError("cost file test_costs length differs from |C|");
  } else {
    tc = generate_test_costs(distribution(o), data->num_attributes(), rng);
  }
  const double fraction = o.train_fraction.value_or(default_fraction);
  if (fraction >= 1.0) {
    if (fraction > 1.0) throw ValidationError("train fraction must lie in (0, 1]");
    return {data, tc, mc, InstanceSubset::all(data), std::nullopt};
  }
  auto [train, test] = split_train_test(data, fraction, rng);
  return {data, tc, mc, std::move(train), std::move(test)};
}

std::string trace_csv(const std::vector<PruneTraceEntry>& trace, const std::vector<std::string>& attribute_names) {
  std::ostringstream out;
  out << "step,node,attribute,tc_keep,mc_keep,ac_keep,tc_prune,mc_prune,ac_prune,instances,pruned,"
         "tc_unpruned,mc_unpruned,ac_unpruned\n";
  for (const auto& e : trace) {
    const std::string attr = e.attribute < attribute_names.size() ? attribute_names[e.attribute]
                                                                   : "a" + std::to_string(e.attribute + 1);
    out << e.step << ',' << (e.node_name.empty() ? std::to_string(e.node_id) : e.node_name) << ',' << attr << ','
        << format_double(e.cost_keep.total_test_cost) << ',' << format_double(e.cost_keep.total_misclassification_cost)
        << ',' << format_double(e.cost_keep.average_cost) << ',' << format_double(e.cost_prune.total_test_cost) << ','
        << format_double(e.cost_prune.total_misclassification_cost) << ',' << format_double(e.cost_prune.average_cost)
        << ',' << e.instance_count << ',' << (e.pruned ? "yes" : "no") << ','
        << format_double(e.cost_unpruned.total_test_cost) << ','
        << format_double(e.cost_unpruned.total_misclassification_cost) << ','
        << format_double(e.cost_unpruned.average_cost) << '\n';
  }
  return out.str();
}

void print_trace_table(const std::vector<PruneTraceEntry>& trace, std::ostream& out) {
  out << "step  node  attr  ac_unpruned   ac_keep   ac_prune  instances  pruned\n";
  for (const auto& e : trace) {
    out << std::setw(4) << e.step << "  " << std::setw(4)
        << (e.node_name.empty() ? std::to_string(e.node_id) : e.node_name) << "  " << std::setw(4)
        << ("a" + std::to_string(e.attribute + 1)) << std::fixed << std::setprecision(3) << std::setw(13)
        << e.cost_unpruned.average_cost << std::setw(10) << e.cost_keep.average_cost << std::setw(11) << e.cost_prune.average_cost << std::setw(11)
        << e.instance_count << "  " << (e.pruned ? "yes" : "no") << '\n';
  }
  out << std::defaultfloat;
}

int run_train(const Options& o) {
  TrainingSetup s = setup(o, 1.0);
  const double lambda = o.lambda.value_or(0.0);
  auto config = competition_options(o);
  DecisionTree tree = build_tree(s.train, s.tc, lambda, config.induction);
  nlohmann::ordered_json report;
  report["lambda"] = lambda;
  report["test_costs"] = std::vector<double>(s.tc.values().begin(), s.tc.values().end());
  report["class_mapping"] = class_mapping_json(s.data->class_names());
  report["unpruned"] = {{"nodes", tree.size()},
                        {"training", breakdown_json(average_cost(tree, s.train, s.tc, s.mc))}};
  if (s.test) report["unpruned"]["testing"] = breakdown_json(average_cost(tree, *s.test, s.tc, s.mc));
  if (prune_mode(o, "none") != PruneMode::None) {
    PruneResult pruned = post_prune(tree, s.tc, s.mc, config.pruning);
    tree = pruned.tree;
    report["pruned"] = {{"nodes", tree.size()},
                        {"training", breakdown_json(average_cost(tree, s.train, s.tc, s.mc))}};
    if (s.test) report["pruned"]["testing"] = breakdown_json(average_cost(tree, *s.test, s.tc, s.mc));
    if (!o.out_csv.empty()) write_file(o.out_csv, trace_csv(pruned.trace, s.data->attribute_names()));
  }
  if (!o.tree_out.empty()) write_file(o.tree_out, serialize(tree));
  write_or_print(o.out_json, report.dump(2) + "\n");
  return 0;
}

int run_prune(const Options& o) {
  DecisionTree tree = deserialize(read_file(o.fixture));
  auto costs = cost_file(o);
  TestCostVector tc = tree.tc_used();
  if (costs && costs->test_costs) tc = *costs->test_costs;
  MisclassificationMatrix mc = resolve_mc(o, costs, tree.num_classes());
  PruneOptions options;
  options.prune_on_tie = o.prune_on_tie;
  PruneResult result = post_prune(tree, tc, mc, options);

  const CostBreakdown before = subtree_cost(tree, 0, tc, mc);
  const CostBreakdown after = subtree_cost(result.tree, 0, tc, mc);
  print_trace_table(result.trace, std::cout);
  if (!o.out_csv.empty()) write_file(o.out_csv, trace_csv(result.trace, {}));
  if (!o.tree_out.empty()) write_file(o.tree_out, serialize(result.tree));
  nlohmann::ordered_json report;
  report["before"] = breakdown_json(before);
  report["after"] = breakdown_json(after);
  report["nodes_before"] = tree.size();
  report["nodes_after"] = result.tree.size();
  if (before.average_cost > 0.0) report["reduction_ratio"] = reduction_ratio(before.average_cost, after.average_cost);
  if (!o.out_json.empty()) write_file(o.out_json, report.dump(2) + "\n");
  return 0;
}

int run_sweep(const Options& o) {
  TrainingSetup s = setup(o, 0.6);
  const PruneMode mode = prune_mode(o, "post");
  if (mode == PruneMode::Both) throw ValidationError("sweep runs one prune mode; use none or post");
  SweepResult sweep = run_competition(s.train, s.tc, s.mc, grid(o), mode == PruneMode::Post, s.test,
                                      competition_options(o));
  std::ostringstream csv;
  csv << "lambda,train_cost,test_cost,nodes,winner\n";
  for (std::size_t i = 0; i < sweep.records.size(); ++i) {
    const auto& r = sweep.records[i];
    csv << format_double(r.lambda) << ',' << format_double(r.training.average_cost) << ','
        << (r.testing ? format_double(r.testing->average_cost) : std::string()) << ',' << r.tree.size() << ','
        << (i == sweep.winner_index ? 1 : 0) << '\n';
  }
  nlohmann::ordered_json report;
  report["class_mapping"] = class_mapping_json(s.data->class_names());
  report["test_costs"] = std::vector<double>(s.tc.values().begin(), s.tc.values().end());
  report["pruned"] = mode == PruneMode::Post;
  report["winner_lambda"] = sweep.winner_lambda();
  report["winner_training"] = breakdown_json(sweep.records[sweep.winner_index].training);
  if (sweep.records[sweep.winner_index].testing) {
    report["winner_testing"] = breakdown_json(*sweep.records[sweep.winner_index].testing);
  }
  write_or_print(o.out_csv, csv.str());
  if (!o.out_json.empty()) write_file(o.out_json, report.dump(2) + "\n");
  if (!o.tree_out.empty()) write_file(o.tree_out, serialize(sweep.winner_tree()));
  return 0;
}

int run_experiment_cmd(const Options& o) {
  ExperimentConfig config;
  config.data_path = o.data;
  if (!o.label_column.empty()) config.label_column = o.label_column;
  config.train_fraction = o.train_fraction.value_or(0.6);
  config.trials = o.trials;
  config.master_seed = o.seed;
  config.cost_distribution = distribution(o);
  auto costs = cost_file(o);
  if (costs && costs->test_costs) config.fixed_test_costs = costs->test_costs;
  config.grid = grid(o);
  config.prune_mode = prune_mode(o, "both");
  config.options = competition_options(o);
  config.threads = o.threads;
  if (o.replay && !o.trial) throw ValidationError("--replay needs --trial N");
  if (o.trial) config.only_trial = *o.trial;

  if (!o.mc_file.empty()) {
    auto f = load_cost_file(o.mc_file);
    if (!f.mc_matrix) throw ValidationError(o.mc_file + " has no mc_matrix");
    config.mc_matrix = f.mc_matrix;
  } else if (costs && costs->mc_matrix) {
    config.mc_matrix = costs->mc_matrix;
  } else {
    config.mc_matrix = MisclassificationMatrix::binary(o.mc01, o.mc10);
  }
  // Validates files and matrices before any trial runs.
  auto data = prepare_experiment(config);
  ExperimentReport report = run_experiment(config, data);
  write_or_print(o.out_csv, report.csv);
  if (!o.out_csv.empty()) write_file(o.out_csv + ".classes.csv", class_mapping_csv(report.class_names));
  if (!o.out_json.empty()) {
    write_file(o.out_json, report.summary_json);
  } else if (!o.out_csv.empty()) {
    std::cout << report.summary_json;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost-sensitive C4.5 with post-pruning and lambda competition"};
  app.require_subcommand(1);
  Options o;

  auto* train = app.add_subcommand("train", "build one tree");
  add_data_flags(train, o);
  add_cost_flags(train, o);
  train->add_option("--lambda", o.lambda, "cost exponent (<= 0, default 0)");
  add_prune_flags(train, o, "none");
  train->add_option("--tree-out", o.tree_out, "write the tree as JSON");
  train->add_option("--out-json", o.out_json, "write the cost report as JSON");
  train->add_option("--out-csv", o.out_csv, "write the prune trace as CSV");

  auto* prune = app.add_subcommand("prune", "post-prune a serialized tree using its stored partitions");
  prune->add_option("--fixture", o.fixture, "tree JSON with leaf histograms")->required();
  prune->add_option("--cost-file", o.cost_file, "JSON with test_costs and/or mc_matrix");
  prune->add_option("--mc-file", o.mc_file, "JSON with mc_matrix");
  prune->add_option("--mc-01", o.mc01, "cost of predicting class 1 for a class-0 instance");
  prune->add_option("--mc-10", o.mc10, "cost of predicting class 0 for a class-1 instance");
  prune->add_flag("--prune-on-tie", o.prune_on_tie, "also prune when the leaf costs the same");
  prune->add_option("--out-csv", o.out_csv, "write the prune trace as CSV");
  prune->add_option("--out-json", o.out_json, "write before/after costs as JSON");
  prune->add_option("--tree-out", o.tree_out, "write the pruned tree as JSON");

  auto* sweep = app.add_subcommand("sweep", "one competition run over the lambda grid");
  add_data_flags(sweep, o);
  add_cost_flags(sweep, o);
  add_grid_flags(sweep, o);
  add_prune_flags(sweep, o, "post");
  sweep->add_option("--out-csv", o.out_csv, "per-lambda CSV (default stdout)");
  sweep->add_option("--out-json", o.out_json, "winner summary JSON");
  sweep->add_option("--tree-out", o.tree_out, "write the winning tree as JSON");

  auto* experiment = app.add_subcommand("experiment", "repeated seeded trials");
  add_data_flags(experiment, o);
  add_cost_flags(experiment, o);
  add_grid_flags(experiment, o);
  add_prune_flags(experiment, o, "both");
  experiment->add_option("--trials", o.trials, "number of trials");
  experiment->add_option("--threads", o.threads, "worker threads");
  experiment->add_option("--trial", o.trial, "run only this trial index");
  experiment->add_flag("--replay", o.replay, "replay the trial given by --trial");
  experiment->add_option("--out-csv", o.out_csv, "per-row CSV (default stdout)");
  experiment->add_option("--out-json", o.out_json, "summary JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*train) return run_train(o);
    if (*prune) return run_prune(o);
    if (*sweep) return run_sweep(o);
    if (*experiment) return run_experiment_cmd(o);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const StructureError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
