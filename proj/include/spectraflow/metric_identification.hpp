#pragma once

// Comparison maps between two inner products g, h on R^n, given by their Gram
// matrices G, H in a common basis:
//   g(a v, w) = h(v, w)           =>  a = G^{-1} H
//   b = a^{-1/2}                  (maps g-orthonormal frames to h-orthonormal ones)
//   f = (det H / det G)^{1/4}
// a and f are cocycles; b is one exactly when the a's involved commute.

#include "spectraflow/common.hpp"

namespace spectraflow::metric {

class MetricPair {
public:
  /// Requires both matrices symmetric to 1e-12 with smallest eigenvalue > 1e-12.
  MetricPair(Mat g, Mat h);

  const Mat &g() const { return g_; }
  const Mat &h() const { return h_; }
  Eigen::Index dim() const { return g_.rows(); }

private:
  Mat g_;
  Mat h_;
};

/// Checks the SPD invariants, throwing Error naming `which`.
void check_spd(const Mat &m, const char *which);

Mat a_map(const MetricPair &p);
Mat b_map(const MetricPair &p);
/// b * frame; the input columns must be G-orthonormal to 1e-10.
Mat frame_transform(const MetricPair &p, const Mat &frame);
double volume_factor(const MetricPair &p);

/// max |(M^T Q)_{ij} - (Q M)_{ij}|, i.e. the defect of M being Q-self-adjoint.
double self_adjoint_defect(const Mat &m, const Mat &q);

struct IdentificationResiduals {
  double a_defining = 0.0;      ///< ||G a - H||_max
  double a_self_adjoint = 0.0;  ///< in both inner products
  double b_inverse_square = 0.0; ///< ||b^2 a - I||_max
  double b_self_adjoint = 0.0;
  double b_pairing = 0.0;       ///< ||b(G,H) b(H,G) - I||_max
  double f_inverse = 0.0;       ///< |f(G,H) f(H,G) - 1|
};

IdentificationResiduals identification_residuals(const MetricPair &p);

} // namespace spectraflow::metric
