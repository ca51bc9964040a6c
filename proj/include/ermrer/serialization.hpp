#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "ermrer/experiment.hpp"
#include "ermrer/measure.hpp"

namespace ermrer {

struct Fixture {
  DiscreteMeasure measure;
  RiskProfile risks;
};

inline Fixture parse_fixture_json(const nlohmann::json& j) {
  if (!j.contains("weights") || !j.contains("risks"))
    throw InvalidConfig("fixture requires weights and risks arrays");
  std::vector<double> weights = j.at("weights").get<std::vector<double>>();
  std::vector<double> risks = j.at("risks").get<std::vector<double>>();
  std::optional<std::vector<std::vector<double>>> labels;
  if (j.contains("labels"))
    labels = j.at("labels").get<std::vector<std::vector<double>>>();

  // Drop risk entries along with their zero-weight atoms so the profile
  // stays aligned with the built measure.
  if (weights.size() != risks.size())
    throw LengthMismatch("weights vs risks");
  std::vector<double> kept;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] > 0.0) kept.push_back(risks[i]);

  Fixture f;
  f.measure = build_measure(weights, std::move(labels));
  f.risks = build_risk_profile(std::move(kept));
  return f;
}

inline Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open fixture " + path);
  nlohmann::json j;
  in >> j;
  return parse_fixture_json(j);
}

inline nlohmann::json fixture_to_json(const Fixture& f) {
  nlohmann::json j;
  j["weights"] = f.measure.weights;
  j["risks"] = f.risks.values;
  if (f.measure.labels) j["labels"] = *f.measure.labels;
  return j;
}

inline ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.lambda_grid = default_lambda_grid();
  if (j.contains("grid_half_width"))
    cfg.grid_half_width = j.at("grid_half_width").get<double>();
  if (j.contains("grid_points_per_axis"))
    cfg.grid_points_per_axis = j.at("grid_points_per_axis").get<int>();
  if (j.contains("lambda_grid"))
    cfg.lambda_grid = j.at("lambda_grid").get<std::vector<double>>();
  if (j.contains("train_size")) cfg.train_size = j.at("train_size").get<int>();
  if (j.contains("test_size")) cfg.test_size = j.at("test_size").get<int>();
  if (j.contains("repetitions"))
    cfg.repetitions = j.at("repetitions").get<int>();
  if (j.contains("rng_seed"))
    cfg.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  validate_config(cfg);
  return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open config " + path);
  nlohmann::json j;
  in >> j;
  return parse_experiment_config(j);
}

}  // namespace ermrer
