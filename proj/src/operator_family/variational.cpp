#include "spectraflow/operator_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace spectraflow::family {

double max_rayleigh_on_span(const Mat &t, const Mat &basis) {
  if (basis.cols() == 0 || basis.rows() != t.rows())
    throw Error("max_rayleigh_on_span: basis has wrong shape");
  Eigen::HouseholderQR<Mat> qr(basis);
  const Mat q = qr.householderQ() * Mat::Identity(basis.rows(), basis.cols());
  const Mat compressed = q.transpose() * t * q;
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (compressed + compressed.transpose()),
                                            Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

MinMaxReport min_max_check(const Mat &t, Eigen::Index k, std::size_t trials,
                           std::uint64_t seed) {
  const Eigen::Index n = t.rows();
  if (k < 1 || k > n)
    throw Error("min_max_check: k must satisfy 1 <= k <= n");
  const auto sys = eigen_decompose(t);

  MinMaxReport report;
  report.trials = trials;
  report.lambda_k = sys.values(k - 1);
  report.eigen_subspace_max = max_rayleigh_on_span(t, sys.vectors.leftCols(k));
  report.holds = std::abs(report.eigen_subspace_max - report.lambda_k) <= 1e-9;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  report.min_random_max = std::numeric_limits<double>::infinity();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Mat w(n, k);
    for (Eigen::Index i = 0; i < w.size(); ++i)
      w.data()[i] = gauss(rng);
    const double m = max_rayleigh_on_span(t, w);
    report.min_random_max = std::min(report.min_random_max, m);
    if (m < report.lambda_k - 1e-9)
      ++report.violations;
  }
  report.holds = report.holds && report.violations == 0;
  return report;
}

RayleighReport rayleigh_distance_check(const Mat &t, double level, const Vec &x) {
  RayleighReport report;
  if (x.size() != t.rows()) {
    report.message = "vector size does not match the operator";
    return report;
  }
  const double norm = x.norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    report.message = "x is not a unit vector";
    return report;
  }
  const auto sys = eigen_decompose(t);
  const Eigen::Index n = sys.values.size();
  if (sys.values(0) < -1e-12) {
    report.message = "operator has a negative eigenvalue";
    return report;
  }
  Eigen::Index below = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(sys.values(i) - level) <= 1e-12) {
      report.message = "level coincides with an eigenvalue";
      return report;
    }
    if (sys.values(i) < level)
      ++below;
  }
  if (below == n) {
    report.message = "no eigenvalue above the level";
    return report;
  }
  report.precondition_ok = true;
  report.next_eigenvalue = sys.values(below);
  report.rayleigh = x.dot(t * x);
  report.eps = std::max(0.0, report.rayleigh - level);

  const Mat v = sys.vectors.leftCols(below);
  const Vec residual = x - v * (v.transpose() * x);
  report.distance_sq = residual.squaredNorm();
  report.bound = (level + report.eps) / report.next_eigenvalue;
  report.holds = report.distance_sq <= report.bound + 1e-9;
  return report;
}

} // namespace spectraflow::family
