#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "ermrer/errors.hpp"

namespace ermrer {

using ModelId = std::size_t;

// Finitely supported probability measure. Atoms with zero weight are dropped
// at construction; remaining weights are renormalized to sum to one.
struct DiscreteMeasure {
  std::vector<double> weights;
  // Optional per-atom payload (e.g. model coordinates). Same length as
  // weights when present.
  std::optional<std::vector<std::vector<double>>> labels;

  std::size_t size() const { return weights.size(); }
};

struct RiskProfile {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

struct RiskSummary {
  double delta_star = 0.0;
  std::set<ModelId> lstar_ids;
  bool separable = false;
};

inline DiscreteMeasure build_measure(
    const std::vector<double>& weights,
    std::optional<std::vector<std::vector<double>>> labels = std::nullopt) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw NegativeWeight("weight " + std::to_string(w));
    if (!std::isfinite(w)) throw NegativeWeight("non-finite weight");
    total += w;
  }
  if (total == 0.0) throw AllZeroWeights();
  if (labels && labels->size() != weights.size())
    throw LengthMismatch("labels vs weights");

  DiscreteMeasure m;
  if (labels) m.labels.emplace();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) {
      m.weights.push_back(weights[i] / total);
      if (labels) m.labels->push_back((*labels)[i]);
    }
  }
  return m;
}

inline void check_aligned(const DiscreteMeasure& q, const RiskProfile& l) {
  if (q.size() != l.size()) throw LengthMismatch("measure vs risk profile");
}

inline RiskProfile build_risk_profile(std::vector<double> values) {
  for (double v : values) {
    if (!(std::isfinite(v)) || v < 0.0)
      throw InvalidRisk("risk values must be finite and nonnegative");
  }
  return RiskProfile{std::move(values)};
}

inline RiskSummary risk_summary(const DiscreteMeasure& q,
                                const RiskProfile& l) {
  check_aligned(q, l);
  RiskSummary s;
  s.delta_star = *std::min_element(l.values.begin(), l.values.end());
  double max_v = *std::max_element(l.values.begin(), l.values.end());
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l.values[i] == s.delta_star) s.lstar_ids.insert(i);
  s.separable = (max_v - s.delta_star) > 0.0;
  return s;
}

inline double rashomon_mass(const DiscreteMeasure& q, const RiskProfile& l,
                            double delta) {
  check_aligned(q, l);
  if (delta < 0.0) throw InvalidDelta("delta must be nonnegative");
  double mass = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (l.values[i] <= delta) mass += q.weights[i];
  return mass;
}

}  // namespace ermrer
