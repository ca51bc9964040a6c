#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "ermrer/measure.hpp"
#include "ermrer/type1.hpp"
#include "ermrer/type2.hpp"

namespace ermrer {

enum class KlDirection { P_to_Q, Q_to_P };

struct FunctionalReport {
  double expected_risk = 0.0;
  double kl_p_q = 0.0;
  double kl_q_p = 0.0;
  double jeffreys = 0.0;
  double expected_log_risk = 0.0;
};

enum class TransformKind { V, W };

struct TransformedRisk {
  std::vector<double> values;
  TransformKind kind = TransformKind::V;
  double lambda = 0.0;
};

inline void check_rn(std::span<const double> p_rn, const DiscreteMeasure& q) {
  if (p_rn.size() != q.size()) throw LengthMismatch("rn vector vs measure");
  double total = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (p_rn[i] < 0.0) throw NotNormalized("negative rn entry");
    total += p_rn[i] * q.weights[i];
  }
  if (std::abs(total - 1.0) > 1e-8)
    throw NotNormalized("rn vector does not integrate to 1");
}

inline double expected_risk(std::span<const double> p_rn,
                            const DiscreteMeasure& q, const RiskProfile& l) {
  check_aligned(q, l);
  check_rn(p_rn, q);
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    acc += l.values[i] * p_rn[i] * q.weights[i];
  return acc;
}

inline double kl(std::span<const double> p_rn, const DiscreteMeasure& q,
                 KlDirection direction) {
  check_rn(p_rn, q);
  double acc = 0.0;
  if (direction == KlDirection::P_to_Q) {
    for (std::size_t i = 0; i < q.size(); ++i) {
      double r = p_rn[i];
      if (r > 0.0 && r != 1.0) acc += q.weights[i] * r * std::log(r);
    }
  } else {
    for (std::size_t i = 0; i < q.size(); ++i) {
      double r = p_rn[i];
      if (r == 0.0)
        throw ZeroDerivativeEntry("Q_to_P requires strictly positive rn");
      if (r != 1.0) acc -= q.weights[i] * std::log(r);
    }
  }
  return acc;
}

inline double expected_log_risk(std::span<const double> p_rn,
                                const DiscreteMeasure& q,
                                const RiskProfile& l, double lambda) {
  check_aligned(q, l);
  check_rn(p_rn, q);
  double beta = solve_type2(q, l, lambda).beta;
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    acc += q.weights[i] * p_rn[i] * std::log(beta + l.values[i]);
  return acc;
}

inline double sensitivity(const DiscreteMeasure& q, const RiskProfile& l,
                          double lambda, std::span<const double> p_rn) {
  auto sol = solve_type1(q, l, lambda);
  return expected_risk(p_rn, q, l) - expected_risk(sol.rn_derivative, q, l);
}

inline double log_sensitivity(const DiscreteMeasure& q, const RiskProfile& l,
                              double lambda, std::span<const double> p_rn) {
  auto sol = solve_type2(q, l, lambda);
  return expected_log_risk(p_rn, q, l, lambda) -
         expected_log_risk(sol.rn_derivative, q, l, lambda);
}

inline TransformedRisk transform_risk(const DiscreteMeasure& q,
                                      const RiskProfile& l, double lambda,
                                      TransformKind kind) {
  check_aligned(q, l);
  if (!(lambda > 0.0)) throw NonPositiveLambda();
  TransformedRisk out;
  out.kind = kind;
  out.lambda = lambda;
  out.values.resize(q.size());
  if (kind == TransformKind::V) {
    double beta = solve_type2(q, l, lambda).beta;
    for (std::size_t i = 0; i < q.size(); ++i)
      out.values[i] = std::log(beta + l.values[i]);
  } else {
    double beta = solve_type2(q, l, lambda).beta;
    double logk = log_partition(q, l, -1.0 / lambda);
    for (std::size_t i = 0; i < q.size(); ++i)
      out.values[i] =
          lambda * std::exp(l.values[i] / lambda + logk) - beta;
  }
  return out;
}

inline double find_lambda_delta_eps(const DiscreteMeasure& q,
                                    const RiskProfile& l, double delta,
                                    double eps) {
  auto summary = risk_summary(q, l);
  if (!(delta > summary.delta_star))
    throw InvalidDelta("delta must exceed delta_star");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidDelta("eps must be in (0,1)");
  double lambda = 1.0;
  for (int i = 0; i < 2000; ++i) {
    auto sol = solve_type2(q, l, lambda);
    double mass = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j)
      if (l.values[j] <= delta) mass += sol.rn_derivative[j] * q.weights[j];
    if (mass > 1.0 - eps) return lambda;
    lambda *= 0.5;
  }
  throw NoConvergence("no qualifying lambda found");
}

inline FunctionalReport functional_report(std::span<const double> p_rn,
                                          const DiscreteMeasure& q,
                                          const RiskProfile& l,
                                          double lambda) {
  FunctionalReport r;
  r.expected_risk = expected_risk(p_rn, q, l);
  r.kl_p_q = kl(p_rn, q, KlDirection::P_to_Q);
  r.kl_q_p = kl(p_rn, q, KlDirection::Q_to_P);
  r.jeffreys = r.kl_p_q + r.kl_q_p;
  r.expected_log_risk = expected_log_risk(p_rn, q, l, lambda);
  return r;
}

// KL between two measures given as rn derivatives w.r.t. the same reference.
inline double kl_between(std::span<const double> a_rn,
                         std::span<const double> b_rn,
                         const DiscreteMeasure& q) {
  if (a_rn.size() != b_rn.size() || a_rn.size() != q.size())
    throw LengthMismatch("rn vectors vs measure");
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (a_rn[i] == 0.0) continue;
    if (b_rn[i] == 0.0)
      throw ZeroDerivativeEntry("second measure not dominating");
    acc += q.weights[i] * a_rn[i] * std::log(a_rn[i] / b_rn[i]);
  }
  return acc;
}

}  // namespace ermrer
