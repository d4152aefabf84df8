#include "spectraflow/bundle_sign.hpp"

#include <algorithm>
#include <cmath>

namespace spectraflow::bundle {

namespace {

constexpr double kClosureTolerance = 1e-10;
constexpr double kSingularGram = 1e-12;

Eigen::Index rank_of_projector(const Mat &p) {
  return static_cast<Eigen::Index>(std::llround(p.trace()));
}

} // namespace

SubspaceLoop SubspaceLoop::from_projectors(std::vector<Mat> projectors) {
  if (projectors.size() < 2)
    throw Error("subspace loop: need at least two samples");
  const Mat &p0 = projectors.front();
  if ((projectors.back() - p0).cwiseAbs().maxCoeff() > kClosureTolerance)
    throw Error("subspace loop: P_N differs from P_0");

  SubspaceLoop loop;
  loop.rank = rank_of_projector(p0);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    if (projectors[i].rows() != p0.rows() || projectors[i].cols() != p0.cols())
      throw Error("subspace loop: projector sizes differ");
    if (rank_of_projector(projectors[i]) != loop.rank)
      throw Error("subspace loop: rank changes at sample " + std::to_string(i));
    if (i + 1 < projectors.size()) {
      const double gap = operator_norm(projectors[i + 1] - projectors[i]);
      if (!(gap < 1.0))
        throw Error("subspace loop: step gap " + std::to_string(gap) + " >= 1 at sample " +
                    std::to_string(i));
      loop.step_gaps.push_back(gap);
    }
  }
  loop.projectors = std::move(projectors);
  return loop;
}

SubspaceLoop SubspaceLoop::from_interval_projectors(
    const std::vector<projection::IntervalProjector> &projectors) {
  std::vector<Mat> ps;
  ps.reserve(projectors.size());
  for (const auto &p : projectors)
    ps.push_back(p.p);
  return from_projectors(std::move(ps));
}

double SubspaceLoop::max_step_gap() const {
  return step_gaps.empty() ? 0.0 : *std::max_element(step_gaps.begin(), step_gaps.end());
}

SubspaceLoop SubspaceLoop::rebased(std::size_t start) const {
  const std::size_t n = samples();
  std::vector<Mat> ps;
  ps.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    ps.push_back(projectors[(start + i) % n]);
  return from_projectors(std::move(ps));
}

SubspaceLoop SubspaceLoop::repeated(int times) const {
  if (times < 1)
    throw Error("subspace loop: times must be positive");
  std::vector<Mat> ps;
  for (int r = 0; r < times; ++r)
    for (std::size_t i = 0; i < samples(); ++i)
      ps.push_back(projectors[i]);
  ps.push_back(projectors.front());
  return from_projectors(std::move(ps));
}

Mat projector_onto(const Mat &basis) {
  const Mat q = lowdin(basis);
  return q * q.transpose();
}

Mat lowdin(const Mat &x) {
  const Mat gram = x.transpose() * x;
  Eigen::SelfAdjointEigenSolver<Mat> solver(gram);
  const Vec s = solver.eigenvalues();
  if (s.size() == 0 || !(s.minCoeff() > kSingularGram))
    throw Error("lowdin: Gram matrix is singular");
  const Mat &u = solver.eigenvectors();
  return x * (u * s.cwiseSqrt().cwiseInverse().asDiagonal() * u.transpose());
}

Mat initial_frame(const Mat &p, Eigen::Index rank) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (p + p.transpose()));
  Mat frame = solver.eigenvectors().rightCols(rank);
  for (Eigen::Index c = 0; c < rank; ++c) {
    Eigen::Index arg = 0;
    frame.col(c).cwiseAbs().maxCoeff(&arg);
    if (frame(arg, c) < 0.0)
      frame.col(c) *= -1.0;
  }
  return frame;
}

SignCertificate propagate_frame(const SubspaceLoop &loop) {
  return propagate_frame(loop, initial_frame(loop.projectors.front(), loop.rank));
}

SignCertificate propagate_frame(const SubspaceLoop &loop, const Mat &start_frame) {
  if (start_frame.cols() != loop.rank)
    throw Error("propagate_frame: start frame has the wrong rank");

  SignCertificate cert;
  const Eigen::Index k = loop.rank;
  const Mat id = Mat::Identity(k, k);
  Mat psi = start_frame;
  cert.orthonormality_residual = (psi.transpose() * psi - id).cwiseAbs().maxCoeff();

  for (std::size_t i = 0; i < loop.samples(); ++i) {
    try {
      psi = lowdin(loop.projectors[i + 1] * psi);
    } catch (const Error &) {
      throw Error("loop sampling too coarse at step " + std::to_string(i));
    }
    cert.orthonormality_residual =
        std::max(cert.orthonormality_residual, (psi.transpose() * psi - id).cwiseAbs().maxCoeff());
  }

  cert.closure = start_frame.transpose() * psi;
  cert.det = k == 0 ? 1.0 : cert.closure.determinant();
  cert.det_sign = cert.det < 0.0 ? -1 : 1;
  cert.min_step_gap_slack = 1.0 - loop.max_step_gap();
  if (std::abs(cert.det) < kMinClosureDeterminant)
    throw Error("propagate_frame: |det A| = " + std::to_string(std::abs(cert.det)) +
                " is below the validity threshold");
  return cert;
}

StabilityVerdict sign_stability_check(const SubspaceLoop &a, const SubspaceLoop &b) {
  if (a.projectors.size() != b.projectors.size())
    throw Error("sign_stability_check: loops have different sample counts");
  if (a.rank != b.rank)
    throw Error("sign_stability_check: loops have different ranks");

  StabilityVerdict verdict;
  for (std::size_t i = 0; i < a.projectors.size(); ++i)
    verdict.sup_distance =
        std::max(verdict.sup_distance, operator_norm(a.projectors[i] - b.projectors[i]));
  verdict.hypothesis_holds = verdict.sup_distance < 1.0;
  if (!verdict.hypothesis_holds)
    return verdict;

  verdict.sign_a = propagate_frame(a).det_sign;
  verdict.sign_b = propagate_frame(b).det_sign;
  if (*verdict.sign_a != *verdict.sign_b)
    throw Error("sign_stability_check: signs differ although the loops are close");
  return verdict;
}

TransportResult transported_sign(const std::vector<Mat> &h, const Mat &e0,
                                 const std::optional<std::vector<Mat>> &bundle) {
  if (h.size() < 2)
    throw Error("transported_sign: need at least two samples");
  const Eigen::Index n = h.front().rows();
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i].rows() != n || h[i].cols() != n)
      throw Error("transported_sign: matrix sizes differ");
    if ((h[i].transpose() * h[i] - Mat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-8)
      throw Error("transported_sign: H at sample " + std::to_string(i) + " is not orthogonal");
  }
  if (e0.rows() != n || e0.cols() == 0)
    throw Error("transported_sign: E0 basis has the wrong shape");
  if (bundle && bundle->size() != h.size())
    throw Error("transported_sign: bundle sample count differs from H");

  TransportResult out;
  const Mat &h0 = h.front();
  const Mat &hn = h.back();
  out.end_factor = (h0.transpose() * hn).trace() < 0.0 ? -1 : 1;
  if ((hn - out.end_factor * h0).cwiseAbs().maxCoeff() > 1e-8)
    throw Error("transported_sign: H(1) is not +-H(0)");

  const Mat basis = lowdin(e0);
  out.rank = basis.cols();
  Mat psi = basis;
  for (std::size_t i = 0; i < h.size(); ++i) {
    psi = h[i] * h0.transpose() * basis;
    if (bundle) {
      const Mat &p = (*bundle)[i];
      if ((p * psi - psi).cwiseAbs().maxCoeff() > 1e-8)
        throw Error("transported_sign: invariance failure at sample " + std::to_string(i));
    }
  }
  out.closure = basis.transpose() * psi;
  const Mat expected = out.end_factor * Mat::Identity(out.rank, out.rank);
  out.closure_residual = (out.closure - expected).cwiseAbs().maxCoeff();
  if (out.closure_residual > 1e-6)
    throw Error("transported_sign: closure matrix is not s * I");
  out.sign = (out.end_factor < 0 && out.rank % 2 == 1) ? -1 : 1;
  return out;
}

LassoCertificate lasso_certificate(const family::OperatorFamily &fam, Interval interval,
                                   std::size_t samples) {
  const auto projectors = projection::constant_rank_loop(fam, interval, samples);
  const auto loop = SubspaceLoop::from_interval_projectors(projectors);
  const auto frame = propagate_frame(loop);

  LassoCertificate cert;
  cert.sign = frame.det_sign;
  cert.obstruction = frame.det_sign < 0;
  cert.rank = loop.rank;
  cert.samples = samples;
  cert.interval = interval;
  cert.min_gap_margin = projectors.front().gap_margin;
  for (const auto &p : projectors)
    cert.min_gap_margin = std::min(cert.min_gap_margin, p.gap_margin);
  cert.max_step_gap = loop.max_step_gap();
  cert.closure = frame.closure;
  if (cert.obstruction)
    cert.statement =
        "the interval eigenbundle over this loop is non-orientable; any continuous extension "
        "of the family over a disk bounded by this loop must, at some interior parameter, "
        "either lose the spectral gap at Λ1/Λ2 or change the interval "
        "eigencount";
  else
    cert.statement = "no obstruction detected";
  return cert;
}

} // namespace spectraflow::bundle
