#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ermrer/errors.hpp"

namespace ermrer {

struct PcaProjection {
  // d x 2 matrix whose columns are the top-2 eigenvectors of the sample
  // covariance (1/(n-1) scaling about the mean), leading eigenvalue first.
  Eigen::MatrixXd w;
  Eigen::Vector2d eigenvalues;
};

inline PcaProjection pca_fit(const std::vector<std::vector<double>>& patterns) {
  if (patterns.size() < 3) throw EmptyDataset("need at least 3 patterns");
  const std::size_t n = patterns.size();
  const std::size_t d = patterns[0].size();
  for (const auto& p : patterns)
    if (p.size() != d) throw LengthMismatch("inconsistent pattern dimension");

  Eigen::MatrixXd x(n, d);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < d; ++c) x(r, c) = patterns[r][c];

  Eigen::RowVectorXd mean = x.colwise().mean();
  Eigen::MatrixXd centered = x.rowwise() - mean;
  Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  if (es.info() != Eigen::Success)
    throw DegenerateCovariance("eigendecomposition failed");

  // Eigen sorts ascending; take the last two columns.
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  double scale = std::max(1.0, std::abs(vals(d - 1)));
  if (d < 2 || !(vals(d - 2) > 1e-12 * scale))
    throw DegenerateCovariance("fewer than 2 strictly positive eigenvalues");

  PcaProjection proj;
  proj.w.resize(d, 2);
  proj.w.col(0) = vecs.col(d - 1);
  proj.w.col(1) = vecs.col(d - 2);
  proj.eigenvalues << vals(d - 1), vals(d - 2);
  return proj;
}

// Projects the raw pattern (no mean subtraction): x = W^T x_hat.
inline std::array<double, 2> pca_project(const PcaProjection& proj,
                                         const std::vector<double>& pattern) {
  if (static_cast<Eigen::Index>(pattern.size()) != proj.w.rows())
    throw LengthMismatch("pattern vs projection dimension");
  Eigen::Map<const Eigen::VectorXd> v(pattern.data(), pattern.size());
  Eigen::Vector2d x = proj.w.transpose() * v;
  return {x(0), x(1)};
}

}  // namespace ermrer
