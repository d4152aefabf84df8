#include "spectraflow/metric_identification.hpp"

#include <cmath>

namespace spectraflow::metric {

namespace {

double log_det_spd(const Mat &m) {
  Eigen::LLT<Mat> llt(m);
  if (llt.info() != Eigen::Success)
    throw Error("log determinant: matrix is not positive definite");
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

} // namespace

void check_spd(const Mat &m, const char *which) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw Error(std::string(which) + " must be a non-empty square matrix");
  if (symmetry_defect(m) > 1e-12)
    throw Error(std::string(which) + " is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> solver(m, Eigen::EigenvaluesOnly);
  if (!(solver.eigenvalues().minCoeff() > 1e-12))
    throw Error(std::string(which) + " is not positive definite");
}

MetricPair::MetricPair(Mat g, Mat h) : g_(std::move(g)), h_(std::move(h)) {
  check_spd(g_, "G");
  check_spd(h_, "H");
  if (g_.rows() != h_.rows())
    throw Error("G and H have different sizes");
}

Mat a_map(const MetricPair &p) {
  Eigen::LLT<Mat> llt(p.g());
  if (llt.info() != Eigen::Success)
    throw Error("a_map: G is singular");
  return llt.solve(p.h());
}

Mat b_map(const MetricPair &p) {
  // H v = l G v with V^T G V = I gives a = V L V^{-1} and V^{-1} = V^T G.
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> solver(p.h(), p.g());
  if (solver.info() != Eigen::Success)
    throw Error("b_map: generalized eigenproblem failed");
  const Mat &v = solver.eigenvectors();
  const Vec l = solver.eigenvalues();
  return v * l.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose() * p.g();
}

Mat frame_transform(const MetricPair &p, const Mat &frame) {
  if (frame.rows() != p.dim() || frame.cols() == 0 || frame.cols() > p.dim())
    throw Error("frame_transform: frame has the wrong shape");
  const Mat gram = frame.transpose() * p.g() * frame;
  if ((gram - Mat::Identity(frame.cols(), frame.cols())).cwiseAbs().maxCoeff() > 1e-10)
    throw Error("frame_transform: frame is not G-orthonormal");
  return b_map(p) * frame;
}

double volume_factor(const MetricPair &p) {
  return std::exp(0.25 * (log_det_spd(p.h()) - log_det_spd(p.g())));
}

double self_adjoint_defect(const Mat &m, const Mat &q) {
  return (m.transpose() * q - q * m).cwiseAbs().maxCoeff();
}

IdentificationResiduals identification_residuals(const MetricPair &p) {
  const Eigen::Index n = p.dim();
  const Mat id = Mat::Identity(n, n);
  const Mat a = a_map(p);
  const Mat b = b_map(p);
  const MetricPair flipped(p.h(), p.g());

  IdentificationResiduals r;
  r.a_defining = (p.g() * a - p.h()).cwiseAbs().maxCoeff();
  r.a_self_adjoint = std::max(self_adjoint_defect(a, p.g()), self_adjoint_defect(a, p.h()));
  r.b_inverse_square = (b * b * a - id).cwiseAbs().maxCoeff();
  r.b_self_adjoint = std::max(self_adjoint_defect(b, p.g()), self_adjoint_defect(b, p.h()));
  r.b_pairing = (b * b_map(flipped) - id).cwiseAbs().maxCoeff();
  r.f_inverse = std::abs(volume_factor(p) * volume_factor(flipped) - 1.0);
  return r;
}

} // namespace spectraflow::metric
