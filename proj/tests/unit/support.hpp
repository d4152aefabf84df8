#pragma once

// Generators and independent oracles shared by the unit suites.

#include "spectraflow/common.hpp"
#include "spectraflow/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace testsupport {

using spectraflow::Mat;
using spectraflow::Vec;

inline Mat gaussian_symmetric(Eigen::Index n, std::mt19937_64 &rng, double scale = 1.0) {
  std::normal_distribution<double> g;
  Mat a(n, n);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    a.data()[i] = g(rng);
  return 0.5 * scale * (a + a.transpose());
}

inline Mat random_orthogonal(Eigen::Index n, std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  Mat a(n, n);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    a.data()[i] = g(rng);
  Eigen::HouseholderQR<Mat> qr(a);
  return qr.householderQ() * Mat::Identity(n, n);
}

inline Mat random_spd(Eigen::Index n, std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  Mat a(n, n);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    a.data()[i] = g(rng);
  return a * a.transpose() + 0.5 * Mat::Identity(n, n);
}

inline Mat with_spectrum(const std::vector<double> &values, std::mt19937_64 &rng) {
  const auto n = static_cast<Eigen::Index>(values.size());
  const Mat q = random_orthogonal(n, rng);
  Vec d(n);
  for (Eigen::Index i = 0; i < n; ++i)
    d(i) = values[static_cast<std::size_t>(i)];
  Mat t = q * d.asDiagonal() * q.transpose();
  return 0.5 * (t + t.transpose());
}

/// Number of eigenvalues below sigma, from the pivots of symmetric Gaussian
/// elimination on T - sigma I (Sylvester's law of inertia).
inline int count_below(const Mat &t, double sigma) {
  Mat a = t - sigma * Mat::Identity(t.rows(), t.cols());
  const Eigen::Index n = a.rows();
  int negatives = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    double pivot = a(k, k);
    if (pivot == 0.0)
      pivot = -std::numeric_limits<double>::min();
    if (pivot < 0.0)
      ++negatives;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double f = a(i, k) / pivot;
      for (Eigen::Index j = k + 1; j < n; ++j)
        a(i, j) -= f * a(k, j);
    }
  }
  return negatives;
}

/// Eigenvalues by bisection on the inertia count.
inline std::vector<double> bisection_eigenvalues(const Mat &t) {
  const Eigen::Index n = t.rows();
  double radius = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    radius = std::max(radius, t.row(i).cwiseAbs().sum());
  std::vector<double> out;
  for (int k = 0; k < n; ++k) {
    double lo = -radius - 1.0, hi = radius + 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, radius); ++it) {
      const double mid = 0.5 * (lo + hi);
      (count_below(t, mid) >= k + 1 ? hi : lo) = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

/// align() by exhaustive evaluation, with the documented tie rule written out
/// as a sort key.
inline spectraflow::spectrum::AlignmentResult
brute_force_align(const spectraflow::spectrum::SpectrumWindow &u,
                  const spectraflow::spectrum::SpectrumWindow &v, std::int64_t max_shift,
                  std::size_t min_overlap) {
  using spectraflow::spectrum::AlignmentResult;
  std::vector<AlignmentResult> all;
  for (std::int64_t k = -max_shift; k <= max_shift; ++k) {
    const auto w = v.shifted(k);
    const std::int64_t lo = std::max(u.first, w.first);
    const std::int64_t hi = std::min(u.last(), w.last());
    if (hi < lo || static_cast<std::size_t>(hi - lo + 1) < min_overlap)
      continue;
    double d = 0.0;
    for (std::int64_t j = lo; j <= hi; ++j)
      d = std::max(d, std::abs(std::asinh(u.at(j)) - std::asinh(w.at(j))));
    all.push_back({k, d, static_cast<std::size_t>(hi - lo + 1)});
  }
  if (all.empty())
    return {0, std::numeric_limits<double>::infinity(), 0};
  double best = std::numeric_limits<double>::infinity();
  for (const auto &a : all)
    best = std::min(best, a.distance);
  AlignmentResult pick{};
  bool have = false;
  for (const auto &a : all) {
    if (a.distance > best + 1e-12)
      continue;
    const auto key = [](std::int64_t k) { return std::make_pair(std::llabs(k), k > 0); };
    if (!have || key(a.shift) < key(pick.shift)) {
      pick = a;
      have = true;
    }
  }
  return pick;
}

inline spectraflow::spectrum::SpectrumWindow random_window(std::mt19937_64 &rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 4.0);
  std::vector<double> v(n);
  for (double &x : v)
    x = g(rng);
  return spectraflow::spectrum::ordered_spectrum(v);
}

} // namespace testsupport
