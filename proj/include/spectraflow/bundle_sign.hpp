#pragma once

// Orientability of vector bundles over a circle, computed from sampled loops of
// orthogonal projectors.
//
// A frame Psi_0 of range(P_0) is carried around the loop by
//   Psi_{i+1} = lowdin(P_{i+1} Psi_i),   lowdin(X) = X (X^T X)^{-1/2},
// and the closure (sign) matrix A = Psi_0^T Psi_N relates the frames at both
// ends. sign(det A) is +1 exactly when the bundle is orientable.

#include "spectraflow/common.hpp"
#include "spectraflow/operator_family.hpp"
#include "spectraflow/projection.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spectraflow::bundle {

struct SubspaceLoop {
  std::vector<Mat> projectors; ///< P_0..P_N with P_N = P_0
  Eigen::Index rank = 0;
  std::vector<double> step_gaps; ///< ||P_{i+1} - P_i||_2

  /// Validates closure (entrywise 1e-10), equal ranks and step gaps < 1.
  static SubspaceLoop from_projectors(std::vector<Mat> projectors);
  static SubspaceLoop from_interval_projectors(
      const std::vector<projection::IntervalProjector> &projectors);

  std::size_t samples() const { return projectors.size() - 1; }
  double max_step_gap() const;
  /// Same loop started at sample `start`.
  SubspaceLoop rebased(std::size_t start) const;
  /// The loop traversed `times` times.
  SubspaceLoop repeated(int times) const;
};

/// Rank-k orthogonal projector u u^T built from the columns of u (orthonormalized).
Mat projector_onto(const Mat &basis);

/// Symmetric orthonormalization X (X^T X)^{-1/2}. Throws Error when X^T X is
/// numerically singular.
Mat lowdin(const Mat &x);

/// Orthonormal basis of range(P): eigenvectors for the `rank` largest
/// eigenvalues, each column signed so its largest-magnitude entry is positive.
Mat initial_frame(const Mat &p, Eigen::Index rank);

/// Certificates whose |det A| falls below this are refused.
inline constexpr double kMinClosureDeterminant = 0.5;

struct SignCertificate {
  Mat closure;  ///< A = Psi_0^T Psi_N
  int det_sign = 1;
  double det = 1.0;
  double min_step_gap_slack = 1.0;      ///< 1 - max step gap
  double orthonormality_residual = 0.0; ///< max_i ||Psi_i^T Psi_i - I||_max
};

/// Throws Error("loop sampling too coarse at step i") when a propagation step
/// degenerates, and Error when |det A| < kMinClosureDeterminant.
SignCertificate propagate_frame(const SubspaceLoop &loop);
SignCertificate propagate_frame(const SubspaceLoop &loop, const Mat &start_frame);

struct StabilityVerdict {
  bool hypothesis_holds = false; ///< sup distance < 1
  double sup_distance = 0.0;     ///< sup_i ||P_a(i) - P_b(i)||_2
  std::optional<int> sign_a;
  std::optional<int> sign_b;
};

/// When sup_i ||P_a(i) - P_b(i)||_2 < 1 both signs are computed and must agree
/// (a disagreement throws Error). Otherwise no claim is made.
StabilityVerdict sign_stability_check(const SubspaceLoop &a, const SubspaceLoop &b);

struct TransportResult {
  int sign = 1;        ///< s^k
  int end_factor = 1;  ///< s with H_N = s H_0
  Eigen::Index rank = 0;
  Mat closure;         ///< Psi(0)^T Psi(N), equal to s I
  double closure_residual = 0.0;
};

/// Frame Psi(t_i) = H_i H_0^T B transported by a loop of orthogonal matrices
/// with H_N = s H_0, B an orthonormal basis of e0. If `bundle` is given, each
/// transported frame must lie in range(bundle[i]) to 1e-8.
TransportResult transported_sign(const std::vector<Mat> &h, const Mat &e0,
                                 const std::optional<std::vector<Mat>> &bundle = std::nullopt);

struct LassoCertificate {
  int sign = 1;
  bool obstruction = false;
  Eigen::Index rank = 0;
  std::size_t samples = 0;
  Interval interval;
  double min_gap_margin = 0.0;
  double max_step_gap = 0.0;
  Mat closure;
  std::string statement;
};

/// Interval eigenbundle orientability certificate for a loop family.
LassoCertificate lasso_certificate(const family::OperatorFamily &fam, Interval interval,
                                   std::size_t samples);

} // namespace spectraflow::bundle
