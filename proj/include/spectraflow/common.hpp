#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace spectraflow {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;

/// Numerical refusal raised by the library modules (bad preconditions, coarse
/// grids, singular solves). The CLI maps these to exit status 3.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A closed real interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double center() const { return 0.5 * (lo + hi); }
  double radius() const { return 0.5 * (hi - lo); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Number of worker threads. Honors SPECTRAFLOW_THREADS when set to a positive
/// integer, otherwise uses the hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Work is split into contiguous chunks; callers
/// write results by index, so output order never depends on scheduling.
/// The first exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

/// Largest absolute deviation from symmetry, relative to the max-abs entry.
double symmetry_defect(const Mat &a);

/// Spectral (operator 2-) norm of a matrix.
double operator_norm(const Mat &a);

/// arsinh via ln(x + sqrt(x^2 + 1)), written in the cancellation-free form
/// for negative arguments.
double arsinh(double x);

} // namespace spectraflow
