#include "ccc45/cost_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ccc45/errors.hpp"
#include "json.hpp"

namespace ccc45 {

TestCostVector::TestCostVector(std::vector<double> costs) : costs_(std::move(costs)) {
  if (costs_.empty()) throw ValidationError("test cost vector is empty");
  for (std::size_t a = 0; a < costs_.size(); ++a) {
    if (!std::isfinite(costs_[a]) || costs_[a] <= 0.0) {
      throw ValidationError("test cost of attribute " + std::to_string(a) +
                            " must be finite and > 0, got " + std::to_string(costs_[a]));
    }
  }
}

double TestCostVector::at(std::size_t attribute) const {
  if (attribute >= costs_.size()) {
    throw ArgumentError("attribute index " + std::to_string(attribute) + " out of range for " +
                        std::to_string(costs_.size()) + " test costs");
  }
  return costs_[attribute];
}

TestCostVector TestCostVector::scaled(double factor) const {
  std::vector<double> out(costs_);
  for (double& c : out) c *= factor;
  return TestCostVector(std::move(out));
}

MisclassificationMatrix::MisclassificationMatrix(const std::vector<std::vector<double>>& rows)
    : k_(rows.size()) {
  if (k_ < 2) throw ValidationError("misclassification matrix needs at least 2 classes");
  entries_.reserve(k_ * k_);
  for (std::size_t i = 0; i < k_; ++i) {
    if (rows[i].size() != k_) {
      throw ValidationError("misclassification matrix is not square: row " + std::to_string(i) +
                            " has " + std::to_string(rows[i].size()) + " entries");
    }
    for (std::size_t j = 0; j < k_; ++j) {
      const double v = rows[i][j];
      const std::string where = "mc[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      if (!std::isfinite(v) || v < 0.0) throw ValidationError(where + " must be finite and >= 0");
      if (i == j && v != 0.0) throw ValidationError(where + " is on the diagonal and must be 0");
      entries_.push_back(v);
    }
  }
}

MisclassificationMatrix MisclassificationMatrix::binary(double cost_true0_pred1,
                                                        double cost_true1_pred0) {
  return MisclassificationMatrix({{0.0, cost_true0_pred1}, {cost_true1_pred0, 0.0}});
}

std::vector<std::vector<double>> MisclassificationMatrix::rows() const {
  std::vector<std::vector<double>> out(k_, std::vector<double>(k_));
  for (std::size_t i = 0; i < k_; ++i)
    for (std::size_t j = 0; j < k_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

std::string_view to_string(CostDistribution kind) {
  switch (kind) {
    case CostDistribution::Uniform: return "uniform";
    case CostDistribution::Normal: return "normal";
    case CostDistribution::Pareto: return "pareto";
  }
  return "uniform";
}

CostDistribution parse_cost_distribution(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "uniform") return CostDistribution::Uniform;
  if (lower == "normal") return CostDistribution::Normal;
  if (lower == "pareto") return CostDistribution::Pareto;
  throw ArgumentError("unknown cost distribution '" + std::string(name) + "'");
}

void CostDistributionSpec::validate() const {
  if (!(lower >= 1.0 && lower < upper)) throw ValidationError("cost bounds must satisfy 1 <= lower < upper");
  if (std::ceil(lower) > std::floor(upper)) throw ValidationError("cost bounds contain no integer");
  if (!(normal_sd > 0.0)) throw ValidationError("normal_sd must be > 0");
  if (!(pareto_shape > 0.0)) throw ValidationError("pareto_shape must be > 0");
}

TestCostVector generate_test_costs(const CostDistributionSpec& spec, std::size_t num_attributes,
                                   std::mt19937_64& rng) {
  spec.validate();
  if (num_attributes < 1) throw ArgumentError("need at least one attribute");
  const double lo = std::ceil(spec.lower);
  const double hi = std::floor(spec.upper);
  std::vector<double> costs(num_attributes);
  switch (spec.kind) {
    case CostDistribution::Uniform: {
      std::uniform_int_distribution<long long> dist(static_cast<long long>(lo), static_cast<long long>(hi));
      for (double& c : costs) c = static_cast<double>(dist(rng));
      break;
    }
    case CostDistribution::Normal: {
      std::normal_distribution<double> dist(spec.normal_mean, spec.normal_sd);
      for (double& c : costs) c = std::clamp(std::round(dist(rng)), lo, hi);
      break;
    }
    case CostDistribution::Pareto: {
      // Inverse CDF: scale * U^(-1/shape), U in (0, 1].
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (double& c : costs) {
        const double u = 1.0 - unit(rng);
        c = std::clamp(std::round(spec.lower * std::pow(u, -1.0 / spec.pareto_shape)), lo, hi);
      }
      break;
    }
  }
  return TestCostVector(std::move(costs));
}

double total_test_cost(const TestCostVector& tc, const AttributeSet& attributes) {
  double total = 0.0;
  for (std::size_t a : attributes) total += tc.at(a);
  return total;
}

namespace {

std::vector<double> number_array(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ParseError(what + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

CostFile parse_cost_file(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("cost file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("cost file must be a JSON object");
  CostFile out;
  for (const auto& [key, value] : j.items()) {
    if (key == "test_costs") {
      out.test_costs = TestCostVector(number_array(value, "test_costs"));
    } else if (key == "mc_matrix") {
      if (!value.is_array()) throw ParseError("mc_matrix must be an array of rows");
      std::vector<std::vector<double>> rows;
      for (const auto& row : value) rows.push_back(number_array(row, "mc_matrix row"));
      out.mc_matrix = MisclassificationMatrix(rows);
    } else {
      throw ParseError("unknown cost file field '" + key + "'");
    }
  }
  if (!out.test_costs && !out.mc_matrix) {
    throw ParseError("cost file has neither test_costs nor mc_matrix");
  }
  return out;
}

CostFile load_cost_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open cost file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_cost_file(buffer.str());
}

}  // namespace ccc45
