#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "ermrer/measure.hpp"

namespace ermrer {

struct Type2Solution {
  double lambda = 0.0;
  double beta = 0.0;  // normalization constant
  std::vector<double> rn_derivative;
  double residual = 0.0;
  std::size_t iterations = 0;
};

enum class ASetKind { OpenFromZero, ClosedFromLambdaStar };

struct SolvabilityReport {
  ASetKind a_set_kind = ASetKind::OpenFromZero;
  double lambda_star = 0.0;
  bool c_lower_open = true;
  double divergence_integral = std::numeric_limits<double>::infinity();
};

struct SolverConfig {
  double abs_tol = 1e-12;
  int max_iter = 200;
  double bracket_growth = 2.0;
};

namespace detail {

// Shifted coordinate s = beta + min(values): every denominator is
// s + (v_i - min) with v_i - min >= 0, so the map stays well conditioned
// down to s near the underflow threshold (beta itself would cancel
// catastrophically against -delta_star at small lambda).
inline double kinv_shifted(const DiscreteMeasure& q,
                           std::span<const double> values, double vmin,
                           double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    acc += q.weights[i] / (s + (values[i] - vmin));
  return 1.0 / acc;
}

inline double kinv_derivative_shifted(const DiscreteMeasure& q,
                                      std::span<const double> values,
                                      double vmin, double s) {
  double a1 = 0.0, a2 = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    double d = s + (values[i] - vmin);
    a1 += q.weights[i] / d;
    a2 += q.weights[i] / (d * d);
  }
  return a2 / (a1 * a1);
}

}  // namespace detail

inline double kbar_inverse_raw(const DiscreteMeasure& q,
                               std::span<const double> values, double beta) {
  if (q.size() != values.size()) throw LengthMismatch("measure vs values");
  double vmin = *std::min_element(values.begin(), values.end());
  if (!(beta > -vmin)) throw BetaOutOfDomain("beta must exceed -delta_star");
  return detail::kinv_shifted(q, values, vmin, beta + vmin);
}

inline double kbar_inverse(const DiscreteMeasure& q, const RiskProfile& l,
                           double beta) {
  return kbar_inverse_raw(q, l.values, beta);
}

inline double kbar_inverse_derivative_raw(const DiscreteMeasure& q,
                                          std::span<const double> values,
                                          double beta) {
  if (q.size() != values.size()) throw LengthMismatch("measure vs values");
  double vmin = *std::min_element(values.begin(), values.end());
  if (!(beta > -vmin)) throw BetaOutOfDomain("beta must exceed -delta_star");
  return detail::kinv_derivative_shifted(q, values, vmin, beta + vmin);
}

inline double kbar_inverse_derivative(const DiscreteMeasure& q,
                                      const RiskProfile& l, double beta) {
  return kbar_inverse_derivative_raw(q, l.values, beta);
}

inline Type2Solution solve_type2_raw(const DiscreteMeasure& q,
                                     std::span<const double> values,
                                     double lambda,
                                     const SolverConfig& cfg = {}) {
  if (!(lambda > 0.0)) throw NonPositiveLambda();
  if (q.size() != values.size()) throw LengthMismatch("measure vs values");

  double vmin = *std::min_element(values.begin(), values.end());
  double vmax = *std::max_element(values.begin(), values.end());

  Type2Solution sol;
  sol.lambda = lambda;

  if (vmax == vmin) {
    // Constant risk: the solution equals the reference measure.
    sol.beta = lambda - vmin;
    sol.rn_derivative.assign(q.size(), 1.0);
    sol.residual = 0.0;
    return sol;
  }

  auto kinv = [&](double s) {
    return detail::kinv_shifted(q, values, vmin, s);
  };

  // Bracket in s = beta + delta_star. kinv -> 0 as s -> 0+ (positive mass on
  // the minimizers) and kinv(s) >= s -> infinity, so a sign change exists.
  double s_lo = std::max(1e-300, 1e-12 * (1.0 + std::abs(vmin)));
  while (kinv(s_lo) >= lambda && s_lo > 1e-300) s_lo *= 1e-3;
  double s_hi = 1.0;
  while (kinv(s_hi) < lambda) s_hi *= cfg.bracket_growth;

  // Contractual tolerance on the residual, plus a tighter internal target so
  // downstream identities inherit near machine-precision betas.
  double tol = cfg.abs_tol * std::max(1.0, lambda);
  double target =
      std::max(4.0 * std::numeric_limits<double>::epsilon() * lambda, 1e-300);
  double s = std::min(std::max(lambda, s_lo), s_hi);  // kinv(s) >= s
  double f = kinv(s) - lambda;
  int it = 0;
  for (; it < cfg.max_iter && std::abs(f) > target; ++it) {
    if (f > 0.0)
      s_hi = s;
    else
      s_lo = s;
    if (s_hi - s_lo <=
        4.0 * std::numeric_limits<double>::epsilon() * s_hi)
      break;
    double deriv = detail::kinv_derivative_shifted(q, values, vmin, s);
    double s_next = s - f / deriv;
    if (!(s_next > s_lo && s_next < s_hi)) s_next = 0.5 * (s_lo + s_hi);
    s = s_next;
    f = kinv(s) - lambda;
  }
  if (std::abs(f) > tol)
    throw NoConvergence("type2 root finder exhausted max_iter");

  sol.beta = s - vmin;
  sol.residual = std::abs(f);
  sol.iterations = static_cast<std::size_t>(it);
  sol.rn_derivative.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    sol.rn_derivative[i] = lambda / (s + (values[i] - vmin));
  return sol;
}

inline Type2Solution solve_type2(const DiscreteMeasure& q,
                                 const RiskProfile& l, double lambda,
                                 const SolverConfig& cfg = {}) {
  return solve_type2_raw(q, l.values, lambda, cfg);
}

// On a stored finite support the level set of delta_star always carries
// positive mass, so the divergence integral is infinite and the admissible
// set is (0, infinity). The closed-from-lambda* branch only arises for the
// continuous examples handled by quadrature oracles.
inline SolvabilityReport classify_solvability(const DiscreteMeasure& q,
                                              const RiskProfile& l) {
  check_aligned(q, l);
  return SolvabilityReport{};
}

}  // namespace ermrer
