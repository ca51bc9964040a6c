#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ermrer/type1.hpp"
#include "support/simplex_grid.hpp"

using namespace ermrer;

TEST_CASE("log_partition oracles") {
  auto q = build_measure({0.5, 0.5});
  auto lc = build_risk_profile({3.0, 3.0});
  CHECK(log_partition(q, lc, -2.0) == doctest::Approx(-6.0).epsilon(1e-12));

  auto l = build_risk_profile({0.0, 1.0});
  CHECK(log_partition(q, l, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
  // log(0.5 + 0.5 e^-1), frozen from a direct sum
  CHECK(log_partition(q, l, -1.0) ==
        doctest::Approx(-0.3798854930417224).epsilon(1e-12));
}

TEST_CASE("log_partition survives extreme scales") {
  auto q = build_measure({0.5, 0.5});
  auto l = build_risk_profile({0.0, 1000.0});
  double v = log_partition(q, l, -1e6);
  CHECK(std::isfinite(v));
  CHECK(v == doctest::Approx(std::log(0.5)).epsilon(1e-9));
}

TEST_CASE("solve_type1 constant risk returns the reference") {
  auto q = build_measure({0.3, 0.7});
  auto l = build_risk_profile({2.0, 2.0});
  auto sol = solve_type1(q, l, 0.5);
  CHECK(sol.rn_derivative[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.rn_derivative[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_type1 two-atom oracle") {
  auto q = build_measure({0.5, 0.5});
  auto l = build_risk_profile({0.0, 1.0});
  auto sol = solve_type1(q, l, 1.0);
  // weights proportional to [1, e^-1]
  CHECK(sol.rn_derivative[0] ==
        doctest::Approx(1.4621171572600097).epsilon(1e-12));
  CHECK(sol.rn_derivative[1] ==
        doctest::Approx(0.5378828427399903).epsilon(1e-12));
}

TEST_CASE("solve_type1 large lambda approaches the reference") {
  auto q = build_measure({0.5, 0.5});
  auto l = build_risk_profile({0.0, 1.0});
  auto sol = solve_type1(q, l, 1e6);
  CHECK(std::abs(sol.rn_derivative[0] - 1.0) <= 1e-5);
  CHECK(std::abs(sol.rn_derivative[1] - 1.0) <= 1e-5);
}

TEST_CASE("solve_type1 rejects nonpositive lambda") {
  auto q = build_measure({0.5, 0.5});
  auto l = build_risk_profile({0.0, 1.0});
  CHECK_THROWS_AS(solve_type1(q, l, 0.0), NonPositiveLambda);
  CHECK_THROWS_AS(solve_type1(q, l, -1.0), NonPositiveLambda);
}

TEST_CASE("solve_type1 normalization and ordering on random instances") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uw(0.1, 1.0);
  std::uniform_real_distribution<double> ur(0.0, 10.0);
  std::uniform_real_distribution<double> ul(std::log(1e-3), std::log(1e3));
  for (int k = 0; k < 50; ++k) {
    std::size_t n = 2 + rng() % 100;
    std::vector<double> w(n), r(n);
    for (auto& x : w) x = uw(rng);
    for (auto& x : r) x = ur(rng);
    auto q = build_measure(w);
    auto l = build_risk_profile(std::move(r));
    double lambda = std::exp(ul(rng));
    auto sol = solve_type1(q, l, lambda);

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      // The exponentiated weight underflows to 0 once the rescaled risk
      // exceeds the double range; the log-domain value stays finite.
      CHECK(std::isfinite(sol.log_rn_derivative[i]));
      if (sol.log_rn_derivative[i] > -700.0)
        CHECK(sol.rn_derivative[i] > 0.0);
      total += sol.rn_derivative[i] * q.weights[i];
    }
    CHECK(std::abs(total - 1.0) <= 1e-10);

    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (l.values[i] < l.values[j])
          CHECK(sol.log_rn_derivative[i] >= sol.log_rn_derivative[j]);
        if (l.values[i] == l.values[j])
          CHECK(sol.rn_derivative[i] == sol.rn_derivative[j]);
      }
  }
}

TEST_CASE("solve_type1 matches brute-force grid minimum") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uw(0.2, 1.0);
  std::uniform_real_distribution<double> ur(0.0, 2.0);
  for (int k = 0; k < 5; ++k) {
    std::size_t n = 3 + (k % 2);  // sizes 3 and 4
    std::vector<double> w(n), r(n);
    for (auto& x : w) x = uw(rng);
    for (auto& x : r) x = ur(rng);
    auto q = build_measure(w);
    auto l = build_risk_profile(r);
    double lambda = 0.25 + 0.5 * k;
    auto sol = solve_type1(q, l, lambda);

    int m = n == 3 ? 1413 : 180;  // ~1e6 grid points either way
    double grid_min =
        testsupport::grid_min_objective(q.weights, l.values, lambda, false, m);
    double at_solution = testsupport::objective(q.weights, sol.rn_derivative,
                                                l.values, lambda, false);
    CHECK(at_solution <= grid_min + 1e-6);
  }
}
