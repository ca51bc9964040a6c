#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

// Brute-force minimization over the probability simplex: enumerates all
// rational points with denominator `m` and returns the minimum objective.
// Independent of the library under test.
namespace testsupport {

inline void for_each_composition(
    int n, int m, std::vector<int>& parts,
    const std::function<void(const std::vector<int>&)>& fn, int pos = 0,
    int remaining = -1) {
  if (remaining < 0) remaining = m;
  if (pos == n - 1) {
    parts[pos] = remaining;
    fn(parts);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    parts[pos] = k;
    for_each_composition(n, m, parts, fn, pos + 1, remaining - k);
  }
}

// min over the grid of R(P) + lambda * KL(P||Q)   (type 1)
//                or R(P) + lambda * KL(Q||P)      (type 2)
inline double grid_min_objective(const std::vector<double>& q,
                                 const std::vector<double>& l, double lambda,
                                 bool type_two, int m) {
  int n = static_cast<int>(q.size());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> parts(n);
  for_each_composition(n, m, parts, [&](const std::vector<int>& p) {
    double risk = 0.0, kl = 0.0;
    for (int i = 0; i < n; ++i) {
      double pi = static_cast<double>(p[i]) / m;
      risk += pi * l[i];
      if (type_two) {
        if (pi == 0.0) {
          kl = std::numeric_limits<double>::infinity();
          return;  // KL(Q||P) infinite off the support of P
        }
        kl += q[i] * std::log(q[i] / pi);
      } else if (pi > 0.0) {
        kl += pi * std::log(pi / q[i]);
      }
    }
    best = std::min(best, risk + lambda * kl);
  });
  return best;
}

inline double objective(const std::vector<double>& q,
                        const std::vector<double>& rn,
                        const std::vector<double>& l, double lambda,
                        bool type_two) {
  double risk = 0.0, kl = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    double pi = rn[i] * q[i];
    risk += pi * l[i];
    if (type_two)
      kl += q[i] * std::log(q[i] / pi);
    else if (pi > 0.0)
      kl += pi * std::log(pi / q[i]);
  }
  return risk + lambda * kl;
}

}  // namespace testsupport
