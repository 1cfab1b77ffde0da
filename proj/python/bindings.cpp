#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ccc45/ccc45.hpp"

namespace py = pybind11;
using namespace ccc45;

namespace {

py::dict breakdown_dict(const CostBreakdown& c) {
  py::dict d;
  d["total_test_cost"] = c.total_test_cost;
  d["total_misclassification_cost"] = c.total_misclassification_cost;
  d["average_cost"] = c.average_cost;
  d["instance_count"] = c.instance_count;
  return d;
}

std::shared_ptr<Dataset> make_dataset(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels,
                                            const std::vector<std::string>& attribute_names,
                                            const std::vector<std::string>& class_names) {
  return std::make_shared<Dataset>(rows, labels, attribute_names, class_names);
}

}  // namespace

PYBIND11_MODULE(_ccc45, m) {
  m.doc() = "Cost-sensitive C4.5 trees with lambda competition";

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<StructureError>(m, "StructureError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<Dataset, std::shared_ptr<Dataset>>(m, "Dataset")
      .def_property_readonly("num_instances", &Dataset::num_instances)
      .def_property_readonly("num_attributes", &Dataset::num_attributes)
      .def_property_readonly("num_classes", &Dataset::num_classes)
      .def_property_readonly("attribute_names", &Dataset::attribute_names)
      .def_property_readonly("class_names", &Dataset::class_names)
      .def_property_readonly("labels", [](const Dataset& d) {
        return std::vector<int>(d.labels().begin(), d.labels().end());
      })
      .def("instance", &Dataset::instance);

  m.def("dataset", &make_dataset, py::arg("rows"), py::arg("labels"),
        py::arg("attribute_names") = std::vector<std::string>{}, py::arg("class_names") = std::vector<std::string>{});
  m.def("load_csv", [](const std::filesystem::path& path, std::optional<std::string> label) {
    return std::make_shared<Dataset>(load_csv(path, label));
  }, py::arg("path"), py::arg("label_column") = std::nullopt);

  py::class_<DecisionTree>(m, "DecisionTree")
      .def_property_readonly("size", &DecisionTree::size)
      .def_property_readonly("leaf_count", &DecisionTree::leaf_count)
      .def_property_readonly("depth", &DecisionTree::depth)
      .def_property_readonly("lambda_used", &DecisionTree::lambda_used)
      .def_property_readonly("root_attribute", [](const DecisionTree& t) { return t.root().attribute; })
      .def_property_readonly("root_threshold", [](const DecisionTree& t) { return t.root().threshold; })
      .def("classify", [](const DecisionTree& t, const std::vector<double>& x) {
        auto c = t.classify(x);
        return py::make_tuple(c.predicted_class, std::vector<std::size_t>(c.tested_attributes.begin(),
                                                                           c.tested_attributes.end()));
      })
      .def("to_json", [](const DecisionTree& t) { return serialize(t); })
      .def_static("from_json", [](const std::string& text) { return deserialize(text); })
      .def("__eq__", &DecisionTree::structurally_equal);

  m.def("build_tree", [](std::shared_ptr<Dataset> data, const std::vector<double>& tc, double lambda,
                         std::size_t min_leaf_size) {
    InductionConfig config;
    config.min_leaf_size = min_leaf_size;
    return build_tree(InstanceSubset::all(std::move(data)), TestCostVector(tc), lambda, config);
  }, py::arg("data"), py::arg("test_costs"), py::arg("lambda_"), py::arg("min_leaf_size") = 2);

  m.def("average_cost", [](const DecisionTree& t, std::shared_ptr<Dataset> data, const std::vector<double>& tc,
                           const std::vector<std::vector<double>>& mc) {
    return breakdown_dict(average_cost(t, InstanceSubset::all(std::move(data)), TestCostVector(tc),
                                       MisclassificationMatrix(mc)));
  });

  m.def("post_prune", [](const DecisionTree& t, const std::vector<double>& tc,
                         const std::vector<std::vector<double>>& mc, bool prune_on_tie) {
    auto result = post_prune(t, TestCostVector(tc), MisclassificationMatrix(mc), PruneOptions{prune_on_tie});
    py::list trace;
    for (const auto& e : result.trace) {
      py::dict d;
      d["step"] = e.step;
      d["node"] = e.node_name.empty() ? std::to_string(e.node_id) : e.node_name;
      d["attribute"] = e.attribute;
      d["keep"] = breakdown_dict(e.cost_keep);
      d["prune"] = breakdown_dict(e.cost_prune);
      d["unpruned"] = breakdown_dict(e.cost_unpruned);
      d["pruned"] = e.pruned;
      trace.append(d);
    }
    return py::make_tuple(result.tree, trace);
  }, py::arg("tree"), py::arg("test_costs"), py::arg("mc"), py::arg("prune_on_tie") = false);

  m.def("reduction_ratio", &reduction_ratio);
  m.def("average_reduction_ratio", [](const std::vector<double>& r) { return average_reduction_ratio(r); });

  m.def("lambda_grid", [](double start, double end, double step) { return LambdaGrid{start, end, step}.values(); },
        py::arg("start") = -4.0, py::arg("end") = 0.0, py::arg("step") = 0.25);

  m.def("run_competition", [](std::shared_ptr<Dataset> data, const std::vector<double>& tc,
                              const std::vector<std::vector<double>>& mc, double start, double end, double step,
                              bool prune) {
    auto result = run_competition(InstanceSubset::all(std::move(data)), TestCostVector(tc),
                                  MisclassificationMatrix(mc), LambdaGrid{start, end, step}, prune);
    py::list records;
    for (const auto& r : result.records) {
      py::dict d;
      d["lambda"] = r.lambda;
      d["training"] = breakdown_dict(r.training);
      d["nodes"] = r.tree.size();
      records.append(d);
    }
    return py::make_tuple(result.winner_lambda(), result.winner_tree(), records);
  }, py::arg("data"), py::arg("test_costs"), py::arg("mc"), py::arg("start") = -4.0, py::arg("end") = 0.0,
     py::arg("step") = 0.25, py::arg("prune") = true);

  m.def("run_experiment", [](const std::filesystem::path& data_path, std::size_t trials, std::uint64_t seed,
                             const std::string& prune_mode, double start, double end, double step,
                             std::optional<std::vector<double>> test_costs, std::size_t threads) {
    ExperimentConfig config;
    config.data_path = data_path;
    config.trials = trials;
    config.master_seed = seed;
    config.prune_mode = parse_prune_mode(prune_mode);
    config.grid = LambdaGrid{start, end, step};
    if (test_costs) config.fixed_test_costs = TestCostVector(*test_costs);
    config.threads = threads;
    auto report = run_experiment(config);
    return py::make_tuple(report.csv, report.summary_json);
  }, py::arg("data_path"), py::arg("trials") = 100, py::arg("seed") = 0, py::arg("prune_mode") = "both",
     py::arg("start") = -4.0, py::arg("end") = 0.0, py::arg("step") = 0.25, py::arg("test_costs") = std::nullopt,
     py::arg("threads") = 1);
}
