#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ermrer/measure.hpp"
#include "ermrer/pca.hpp"
#include "ermrer/type1.hpp"
#include "ermrer/type2.hpp"

namespace ermrer {

struct Dataset {
  std::vector<std::vector<double>> patterns;
  std::vector<int> labels;

  std::size_t size() const { return patterns.size(); }
};

struct ExperimentConfig {
  double grid_half_width = 50.0;
  int grid_points_per_axis = 201;
  std::vector<double> lambda_grid;  // defaults to 40 log-spaced in [1e-3, 10]
  int train_size = 2000;
  int test_size = 500;
  int repetitions = 5;
  std::uint64_t rng_seed = 0;
};

struct SweepRow {
  int repetition = 0;
  double lambda = 0.0;
  bool type_two = false;  // printed as "I" / "II" in the CSV
  double train_risk = 0.0;
  double test_risk = 0.0;
  double gap = 0.0;
};

struct SweepSummary {
  double mean_gap_type1 = 0.0;
  double mean_gap_type2 = 0.0;
  // lambdas where the per-lambda mean gap of Type-II is strictly below
  // Type-I's, supporting (or not) the qualitative lower-gap claim.
  std::vector<double> lambdas_type2_lower_gap;
};

inline std::vector<double> default_lambda_grid() {
  std::vector<double> grid(40);
  double lo = std::log(1e-3), hi = std::log(10.0);
  for (int i = 0; i < 40; ++i)
    grid[i] = std::exp(lo + (hi - lo) * i / 39.0);
  return grid;
}

inline void validate_config(const ExperimentConfig& cfg) {
  if (cfg.grid_points_per_axis < 3 || cfg.grid_points_per_axis % 2 == 0)
    throw InvalidConfig("grid_points_per_axis must be odd and >= 3");
  if (cfg.train_size < 1 || cfg.test_size < 1 || cfg.repetitions < 1)
    throw InvalidConfig("sizes and repetitions must be >= 1");
  for (double l : cfg.lambda_grid)
    if (!(l > 0.0)) throw InvalidConfig("lambda grid entries must be > 0");
}

// Uniform measure over an axis-aligned grid tiling [-h, h]^2; labels carry
// the model coordinates.
inline DiscreteMeasure build_model_grid(const ExperimentConfig& cfg) {
  validate_config(cfg);
  int n = cfg.grid_points_per_axis;
  double h = cfg.grid_half_width;
  std::vector<double> weights(static_cast<std::size_t>(n) * n, 1.0);
  std::vector<std::vector<double>> coords;
  coords.reserve(weights.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      coords.push_back({-h + 2.0 * h * a / (n - 1),
                        -h + 2.0 * h * b / (n - 1)});
  return build_measure(weights, std::move(coords));
}

namespace detail {

inline std::pair<int, int> ordered_label_pair(const std::vector<int>& labels) {
  if (labels.empty()) throw EmptyDataset();
  int lo = labels[0], hi = labels[0];
  for (int l : labels) {
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  return {lo, hi};
}

}  // namespace detail

// 0-1 loss of the linear classifier sign(<x, theta>) averaged over the
// dataset; a nonpositive inner product (including theta = 0) predicts the
// first label of the ordered pair.
inline RiskProfile empirical_risk_profile(const DiscreteMeasure& grid,
                                          const Dataset& data) {
  if (data.size() == 0) throw EmptyDataset();
  if (data.patterns.size() != data.labels.size())
    throw LengthMismatch("patterns vs labels");
  if (!grid.labels) throw LengthMismatch("grid carries no coordinates");
  auto [lo, hi] = detail::ordered_label_pair(data.labels);

  std::vector<double> values(grid.size(), 0.0);
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const auto& theta = (*grid.labels)[m];
    int errors = 0;
    for (std::size_t k = 0; k < data.size(); ++k) {
      double dot =
          theta[0] * data.patterns[k][0] + theta[1] * data.patterns[k][1];
      int predicted = dot > 0.0 ? hi : lo;
      if (predicted != data.labels[k]) ++errors;
    }
    values[m] = static_cast<double>(errors) / data.size();
  }
  return RiskProfile{std::move(values)};
}

// Two unit-covariance Gaussian clusters with means +-(1,1); labels 0 and 1.
inline Dataset generate_synthetic(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  Dataset d;
  d.patterns.reserve(n);
  d.labels.reserve(n);
  for (int k = 0; k < n; ++k) {
    int label = coin(rng) ? 1 : 0;
    double mu = label == 1 ? 1.0 : -1.0;
    d.patterns.push_back({mu + gauss(rng), mu + gauss(rng)});
    d.labels.push_back(label);
  }
  return d;
}

inline Dataset subsample(const Dataset& pool, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  Dataset d;
  d.patterns.reserve(n);
  d.labels.reserve(n);
  for (int k = 0; k < n; ++k) {
    std::size_t i = pick(rng);
    d.patterns.push_back(pool.patterns[i]);
    d.labels.push_back(pool.labels[i]);
  }
  return d;
}

// One row per (repetition, lambda, type), repetition-major, lambda
// ascending, Type-I before Type-II. Each repetition subsamples both pools
// with rng seeded at rng_seed + repetition.
inline std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg,
                                       const Dataset& pool_train,
                                       const Dataset& pool_test,
                                       SweepSummary* summary = nullptr) {
  validate_config(cfg);
  auto grid = build_model_grid(cfg);
  std::vector<double> lambdas = cfg.lambda_grid;
  std::sort(lambdas.begin(), lambdas.end());

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(cfg.repetitions) * lambdas.size() * 2);
  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    std::mt19937_64 rng(cfg.rng_seed + static_cast<std::uint64_t>(rep));
    Dataset train = subsample(pool_train, cfg.train_size, rng);
    Dataset test = subsample(pool_test, cfg.test_size, rng);
    RiskProfile l_train = empirical_risk_profile(grid, train);
    RiskProfile l_test = empirical_risk_profile(grid, test);

    auto risk_under = [&](const std::vector<double>& rn,
                          const RiskProfile& l) {
      double acc = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i)
        acc += l.values[i] * rn[i] * grid.weights[i];
      return acc;
    };

    for (double lambda : lambdas) {
      auto s1 = solve_type1(grid, l_train, lambda);
      auto s2 = solve_type2(grid, l_train, lambda);
      for (bool two : {false, true}) {
        const auto& rn = two ? s2.rn_derivative : s1.rn_derivative;
        SweepRow row;
        row.repetition = rep;
        row.lambda = lambda;
        row.type_two = two;
        row.train_risk = risk_under(rn, l_train);
        row.test_risk = risk_under(rn, l_test);
        row.gap = row.test_risk - row.train_risk;
        rows.push_back(row);
      }
    }
  }

  if (summary) {
    *summary = SweepSummary{};
    double g1 = 0.0, g2 = 0.0;
    std::size_t n1 = 0, n2 = 0;
    for (const auto& r : rows) {
      (r.type_two ? g2 : g1) += r.gap;
      ++(r.type_two ? n2 : n1);
    }
    summary->mean_gap_type1 = g1 / n1;
    summary->mean_gap_type2 = g2 / n2;
    for (double lambda : lambdas) {
      double a = 0.0, b = 0.0;
      int ca = 0, cb = 0;
      for (const auto& r : rows)
        if (r.lambda == lambda) {
          if (r.type_two) {
            b += r.gap;
            ++cb;
          } else {
            a += r.gap;
            ++ca;
          }
        }
      if (cb > 0 && ca > 0 && b / cb < a / ca)
        summary->lambdas_type2_lower_gap.push_back(lambda);
    }
  }
  return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "repetition,lambda,type,train_risk,test_risk,gap\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.12g,%s,%.12g,%.12g,%.12g\n",
                  r.repetition, r.lambda, r.type_two ? "II" : "I",
                  r.train_risk, r.test_risk, r.gap);
    out += buf;
  }
  return out;
}

}  // namespace ermrer
