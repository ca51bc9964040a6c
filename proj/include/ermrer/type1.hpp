#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "ermrer/measure.hpp"

namespace ermrer {

struct Type1Solution {
  double lambda = 0.0;
  double log_partition = 0.0;  // K(-1/lambda)
  std::vector<double> rn_derivative;
  // Log-domain representation, always finite; rn_derivative = exp of this
  // and can underflow to 0 when (L_i - delta_star)/lambda exceeds ~745.
  std::vector<double> log_rn_derivative;
};

// log sum_i q_i exp(t * v_i), max-subtracted. Accepts raw value spans so the
// transformed risks of the equivalence theorem (which may be negative) share
// this path.
inline double log_partition_raw(const DiscreteMeasure& q,
                                std::span<const double> values, double t) {
  if (q.size() != values.size()) throw LengthMismatch("measure vs values");
  double max_e = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < q.size(); ++i)
    max_e = std::max(max_e, t * values[i]);
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    acc += q.weights[i] * std::exp(t * values[i] - max_e);
  return max_e + std::log(acc);
}

inline double log_partition(const DiscreteMeasure& q, const RiskProfile& l,
                            double t) {
  return log_partition_raw(q, l.values, t);
}

inline Type1Solution solve_type1_raw(const DiscreteMeasure& q,
                                     std::span<const double> values,
                                     double lambda) {
  if (!(lambda > 0.0)) throw NonPositiveLambda();
  Type1Solution sol;
  sol.lambda = lambda;
  sol.log_partition = log_partition_raw(q, values, -1.0 / lambda);
  sol.rn_derivative.resize(q.size());
  sol.log_rn_derivative.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    sol.log_rn_derivative[i] = -sol.log_partition - values[i] / lambda;
    sol.rn_derivative[i] = std::exp(sol.log_rn_derivative[i]);
  }
  return sol;
}

inline Type1Solution solve_type1(const DiscreteMeasure& q,
                                 const RiskProfile& l, double lambda) {
  return solve_type1_raw(q, l.values, lambda);
}

}  // namespace ermrer
