#pragma once

// Orthogonal projectors onto the spectral subspace of an interval, either
// assembled from eigenpairs or obtained from the resolvent contour integral
//   P = (1 / 2 pi i) \oint (z - T)^{-1} dz
// over the circle through the interval endpoints (counterclockwise).

#include "spectraflow/common.hpp"
#include "spectraflow/operator_family.hpp"

#include <vector>

namespace spectraflow::projection {

struct IntervalProjector {
  Mat p;
  Eigen::Index rank = 0;
  Interval interval;
  double gap_margin = 0.0; ///< distance from the endpoints to the spectrum
};

/// Endpoints closer than this to an eigenvalue are refused.
inline constexpr double kEndpointTolerance = 1e-8;

/// min over eigenvalues of the distance to {lo, hi}.
double gap_margin(const Vec &eigenvalues, Interval interval);

/// Sum of v v^T over eigenpairs with eigenvalue in (lo, hi).
/// Throws Error("interval endpoint hits spectrum ...") naming the eigenvalue.
IntervalProjector project_direct(const Mat &t, Interval interval);

/// Trapezoid rule with `nodes` points on the circle centered at the interval
/// midpoint with radius half its length. The real part is returned; the
/// imaginary part must vanish to 1e-8.
IntervalProjector project_contour(const Mat &t, Interval interval, std::size_t nodes);

struct ProjectorResiduals {
  double idempotence = 0.0; ///< ||P^2 - P||_F
  double symmetry = 0.0;    ///< ||P - P^T||_F
  double commutation = 0.0; ///< ||P T - T P||_F
  double trace = 0.0;       ///< |tr P - rank|

  bool within(double tol) const {
    return idempotence <= tol && symmetry <= tol && commutation <= tol && trace <= tol;
  }
};

ProjectorResiduals residuals(const IntervalProjector &p, const Mat &t);

/// Projectors of a loop family at t_i = i / samples, i = 0..samples. All ranks
/// must agree, each gap margin must exceed kEndpointTolerance and consecutive
/// projectors must satisfy ||P_{i+1} - P_i||_2 < 1.
std::vector<IntervalProjector> constant_rank_loop(const family::OperatorFamily &fam,
                                                  Interval interval, std::size_t samples);

} // namespace spectraflow::projection
